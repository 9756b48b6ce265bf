"""Sturm-Liouville problem -chi'' + q^2 y^2 chi = eps chi on [-1, 1], chi(+-1) = 0.

Eigenfunctions split by parity and are Gaussians times Kummer functions:

    even:  chi = exp(-q y^2/2) M(1/4 - eps/(4q); 1/2; q y^2)
    odd:   chi = sqrt(q) y exp(-q y^2/2) M(3/4 - eps/(4q); 3/2; q y^2)

Eigenvalues come from shooting on chi(1; eps): a sign-change scan followed by
bisection. :func:`fd_oracle` is an independent finite-difference check.
"""

from __future__ import annotations

import enum
import warnings
import math
from dataclasses import dataclass

import numpy as np

from . import _dd, kernels
from .errors import BracketError, DomainError
from .specfun import kummer_arrays

TOL_SHOOT = 1e-12
TOL_QUAD = 1e-10
Q_MAX = 200.0
NODE_GRID = 2048


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class EigenState:
    """One normalized eigenstate; ``n`` is the global index (even parity at even n).

    ``kummer_a`` holds the series parameter 1/4 - eps/(4q) (even) or
    3/4 - eps/(4q) (odd) as a double-double pair. Evaluating the eigenfunction
    from it instead of from the rounded ``epsilon`` keeps the solution that
    grows like exp(q y^2/2) out of the result near the walls.
    """

    parity: Parity
    n: int
    epsilon: float
    c_norm: float
    q: float
    boundary_residual: float
    kummer_a: tuple = (0.0, 0.0)

    def chi(self, y):
        """Unnormalized (chi, chi_y) at ``y``."""
        return _chi_from_a(self.parity, self.q, self.kummer_a, y)

    def chi_yy(self, y):
        """chi'' straight from the differential equation."""
        y = np.asarray(y, dtype=np.float64)
        return (self.q**2 * y * y - self.epsilon) * self.chi(y)[0]


def _offset(parity: Parity) -> float:
    return 0.25 if parity is Parity.EVEN else 0.75


def _b(parity: Parity) -> float:
    return 0.5 if parity is Parity.EVEN else 1.5


def _a_of_eps(parity: Parity, q: float, epsilon: float):
    return _dd.sub((_offset(parity), 0.0), _dd._div((float(epsilon), 0.0), (4.0 * q, 0.0)))


def _eps_of_a(parity: Parity, q: float, a) -> float:
    return _dd.to_float(_dd._mul_d(_dd.sub((_offset(parity), 0.0), a), 4.0 * q))


def _chi_from_a(parity: Parity, q: float, a, y):
    if not q > 0:
        raise DomainError("q must be positive")
    y = np.asarray(y, dtype=np.float64)
    if np.any(np.abs(y) > 1.0):
        raise DomainError("|y| must not exceed 1")
    z = q * y * y
    m, dm, _, _, _ = kummer_arrays(a[0], _b(parity), z, a_lo=a[1])
    g = np.exp(-0.5 * z)
    if parity is Parity.EVEN:
        chi = g * m
        chi_y = g * q * y * (2.0 * dm - m)
    else:
        sq = math.sqrt(q)
        chi = sq * y * g * m
        chi_y = sq * g * (m * (1.0 - z) + 2.0 * z * dm)
    if chi.ndim == 0:
        return float(chi), float(chi_y)
    return chi, chi_y


def chi_eval(parity: Parity, q: float, epsilon: float, y):
    """(chi, chi_y) of the parity solution with chi(0) = 1 (even) or chi'(0) = sqrt(q) (odd)."""
    if not q > 0:
        raise DomainError("q must be positive")
    return _chi_from_a(parity, q, _a_of_eps(parity, q, epsilon), y)


def _wall_value(parity: Parity, q: float, a) -> float:
    # chi(1) up to the positive factor exp(-q/2) (times sqrt(q) for odd)
    return float(kummer_arrays(a[0], _b(parity), np.array([q]), a_lo=a[1])[0][0])


def _bisect(parity, q, lo, flo, hi):
    """Bisection on the double-double parameter a; returns the endpoint with smaller |chi(1)|."""
    fhi = _wall_value(parity, q, hi)
    for _ in range(240):
        mid = _dd._mul_d(_dd._add(lo, hi), 0.5)
        if mid == lo or mid == hi:
            break
        width = abs(_dd.to_float(_dd.sub(hi, lo)))
        if width <= 1e-31 * max(1.0, abs(mid[0])):
            break
        fm = _wall_value(parity, q, mid)
        if fm == 0.0:
            return mid, 0.0
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)


def _lower_bound(n: int, q: float) -> float:
    # V >= 0 gives the box levels; the Dirichlet walls raise the oscillator levels
    return max(((n + 1) * math.pi / 2.0) ** 2, (2 * n + 1) * q)


def _upper_bound(n: int, q: float) -> float:
    return ((n + 1) * math.pi / 2.0) ** 2 + q * q


def _count_nodes(parity, q, a) -> int:
    y = np.linspace(0.0, 1.0, NODE_GRID + 1)[1:-1]
    chi, _ = _chi_from_a(parity, q, a, y)
    wall = abs(_chi_from_a(parity, q, a, 1.0)[0])
    # what survives of chi(1) != 0 is a solution growing like exp(q y^2/2);
    # samples below it (or far below the peak) are noise, not nodes
    floor = np.maximum(1e-10 * np.abs(chi).max(), 10.0 * wall * np.exp(-0.5 * q * (1.0 - y * y)))
    s = np.sign(chi[np.abs(chi) > floor])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _roots_for_parity(parity: Parity, q: float, count: int, step: float):
    """First ``count`` roots of chi(1; eps) for one parity, as double-double a values."""
    first = 0 if parity is Parity.EVEN else 1
    eps = _lower_bound(first, q) * (1.0 - 1e-12)
    a = _a_of_eps(parity, q, eps)
    f = _wall_value(parity, q, a)
    roots = []
    ceiling = _upper_bound(first + 2 * (count - 1), q)
    extensions = 0
    while len(roots) < count:
        nxt = eps + step
        if nxt > ceiling:
            if extensions == 2:
                raise BracketError(
                    f"found {len(roots)} of {count} {parity.value} roots below eps={ceiling}"
                )
            extensions += 1
            ceiling *= 2.0
        an = _a_of_eps(parity, q, nxt)
        fn = _wall_value(parity, q, an)
        if fn == 0.0:
            roots.append(an)
            # nudge off the exact zero so the next bracket starts cleanly
            nxt += 1e-9 * step
            an = _a_of_eps(parity, q, nxt)
            fn = _wall_value(parity, q, an)
        elif (fn < 0) != (f < 0):
            roots.append(_bisect(parity, q, a, f, an)[0])
        eps, a, f = nxt, an, fn
    return roots


def _gl_integrate(fun, tol: float, start: int = 64, max_nodes: int = 8192) -> float:
    """Gauss-Legendre on [0, 1], doubling the node count until two estimates agree."""
    prev = None
    n = start
    while n <= max_nodes:
        x, w = np.polynomial.legendre.leggauss(n)
        val = 0.5 * float(np.dot(w, fun(0.5 * (x + 1.0))))
        if prev is not None and abs(val - prev) <= tol * max(abs(val), 1e-300):
            return val
        prev = val
        n *= 2
    return prev


def _normalize(parity: Parity, q: float, a) -> tuple[float, float]:
    half = _gl_integrate(lambda y: _chi_from_a(parity, q, a, y)[0] ** 2, TOL_QUAD)
    c = 1.0 / math.sqrt(2.0 * half)
    ys = np.linspace(0.0, 1.0, NODE_GRID + 1)
    peak = float(np.max(np.abs(_chi_from_a(parity, q, a, ys)[0])))
    return c, peak


def solve_eigenvalues(q: float, n_max: int, tol_shoot: float = TOL_SHOOT) -> list[EigenState]:
    """Eigenstates n = 0..n_max sorted by eigenvalue, parity alternating from even.

    Roots are refined in double-double. ``boundary_residual`` records
    |chi(1)|/max|chi|; a :class:`RuntimeWarning` is issued when it exceeds
    ``tol_shoot``, which only happens for very stiff oscillators (q above
    roughly 120, where the eigenvalues are still accurate but the closed-form
    eigenfunctions are not usable near the walls).
    """
    if not 0 < q <= Q_MAX:
        raise DomainError(f"q={q} outside (0, {Q_MAX}]")
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    # within one parity consecutive levels are at least ~min(4q, 2 pi^2) apart
    base = max(q / 4.0, math.pi**2 / 16.0)
    states: list[EigenState] = []
    for parity in (Parity.EVEN, Parity.ODD):
        first = 0 if parity is Parity.EVEN else 1
        count = len(range(first, n_max + 1, 2))
        if count == 0:
            continue
        step = base
        for _attempt in range(3):
            roots = _roots_for_parity(parity, q, count, step)
            if all(_count_nodes(parity, q, a) == m for m, a in enumerate(roots)):
                break
            step /= 2.0
        else:
            raise BracketError(f"{parity.value} roots for q={q} fail the node-count check")
        for m, a in enumerate(roots):
            c, peak = _normalize(parity, q, a)
            wall = abs(_chi_from_a(parity, q, a, 1.0)[0]) / peak
            if wall > tol_shoot:
                warnings.warn(f"q={q}, n={first + 2 * m}: boundary residual {wall:.2e}",
                              RuntimeWarning, stacklevel=2)
            states.append(EigenState(parity, first + 2 * m, _eps_of_a(parity, q, a), c, q,
                                     wall, (float(a[0]), float(a[1]))))
    states.sort(key=lambda s: s.n)
    return states


def _fd_eigs(q: float, intervals: int, n_max: int) -> np.ndarray:
    h = 2.0 / intervals
    y = -1.0 + h * np.arange(1, intervals)
    d = 2.0 / h**2 + (q * y) ** 2
    e = np.full(intervals - 2, -1.0 / h**2)
    hi = 4.0 / h**2 + q * q
    return np.asarray(kernels.tridiag_eigvals_bisect(d, e, 0, n_max, 0.0, hi, 1e-15))


def fd_oracle(q: float, grid_points: int = 4000, n_max: int = 10) -> np.ndarray:
    """Three-point finite-difference eigenvalues, Richardson-extrapolated from h and h/2."""
    if grid_points < 200:
        raise DomainError("grid_points must be at least 200")
    coarse = _fd_eigs(q, grid_points, n_max)
    fine = _fd_eigs(q, 2 * grid_points, n_max)
    return (4.0 * fine - coarse) / 3.0
