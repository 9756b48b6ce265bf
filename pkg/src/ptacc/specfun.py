"""Kummer's confluent hypergeometric function M(a; b; z) = 1F1(a; b; z).

Real parameters and arguments only. The Taylor series is summed with
double-double (compensated) arithmetic; negative arguments go through
Kummer's transformation M(a; b; z) = e^z M(b - a; b; -z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NoConvergence, PoleError

TOL_F1 = 1e-12
MAX_TERMS = 500
# exp(z) overflows just above 709
Z_LIMIT = 700.0


@dataclass(frozen=True)
class KummerEval:
    value: float
    d_dz: float
    d2_dz2: float
    terms_used: int
    est_error: float


def _check_params(b: float, z) -> None:
    if b <= 0 and float(b).is_integer():
        raise PoleError(f"b = {b} is a non-positive integer")
    zmax = float(np.max(np.abs(z))) if np.size(z) else 0.0
    if not math.isfinite(zmax) or zmax > Z_LIMIT:
        raise NoConvergence(f"|z| = {zmax} outside the supported range |z| <= {Z_LIMIT}")


def kummer_arrays(a: float, b: float, z, tol_f1: float = TOL_F1, max_terms: int = MAX_TERMS,
                  a_lo: float = 0.0):
    """Vectorized evaluation over ``z``; returns ``(M, M', M'', terms, est_error)`` arrays.

    ``a_lo`` is an optional low-order correction: the series uses the
    double-double parameter a + a_lo.
    """
    z = np.asarray(z, dtype=np.float64)
    _check_params(b, z)
    val, d1, d2, terms, err, status = kernels.kummer_array(
        float(a), float(b), z.ravel(), float(tol_f1), int(max_terms), float(a_lo)
    )
    if np.any(status != kernels.OK):
        i = int(np.flatnonzero(status != kernels.OK)[0])
        what = "overflow" if status[i] == kernels.OVERFLOW else f"{max_terms} terms"
        raise NoConvergence(f"series for M({a}; {b}; {z.ravel()[i]}) failed: {what}")
    shape = z.shape
    return (val.reshape(shape), d1.reshape(shape), d2.reshape(shape),
            terms.reshape(shape), err.reshape(shape))


def kummer_m(a: float, b: float, z: float, tol_f1: float = TOL_F1,
             max_terms: int = MAX_TERMS) -> KummerEval:
    """Evaluate M(a; b; z) with its first two z-derivatives.

    ``est_error`` bounds the truncated tail relative to |M|, floored at the
    double-double working precision times the sum of |terms| (so it stays
    finite at zeros of M).
    """
    val, d1, d2, terms, err = kummer_arrays(a, b, np.array([z], dtype=np.float64),
                                            tol_f1, max_terms)
    return KummerEval(float(val[0]), float(d1[0]), float(d2[0]), int(terms[0]), float(err[0]))


def kummer_m_derivatives(a: float, b: float, z: float, tol_f1: float = TOL_F1):
    """(dM/dz, d2M/dz2) from the term-wise differentiated series."""
    r = kummer_m(a, b, z, tol_f1)
    return r.d_dz, r.d2_dz2
