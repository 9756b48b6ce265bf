"""Kernel backend selection.

The compiled Cython module ``ptacc._core`` is used when it imports; otherwise
the numpy versions in ``ptacc._purepy`` take over. Setting
``PTACC_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _purepy

BACKEND = "python"
_impl = _purepy

if os.environ.get("PTACC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _purepy

OK = _purepy.OK
NO_CONVERGENCE = _purepy.NO_CONVERGENCE
OVERFLOW = _purepy.OVERFLOW

kummer_array = _impl.kummer_array
sturm_count = _impl.sturm_count
tridiag_eigvals_bisect = _impl.tridiag_eigvals_bisect
cn_evolve = _impl.cn_evolve


def backends():
    """Mapping of available backend names to kernel modules."""
    out = {"python": _purepy}
    try:
        from . import _core

        out["cython"] = _core
    except ImportError:
        pass
    return out
