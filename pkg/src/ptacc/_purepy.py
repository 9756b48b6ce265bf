"""Pure Python/numpy versions of the kernels in ``_core.pyx``.

Same signatures and status codes; vectorized across evaluation points where
the compiled version loops.
"""

import math

import numpy as np
from scipy.linalg import solve_banded

from ._dd import _add, _div, _mul, _mul_d, _two_sum

OK = 0
NO_CONVERGENCE = 1
OVERFLOW = 2
DD_EPS = 1e-30


def _take(x, m):
    return x[0][m], x[1][m]


def _put(x, m, v):
    x[0][m] = v[0]
    x[1][m] = v[1]


def _series(a, b, z, tol, max_terms):
    """Vectorized double-double sum of M(a;b;z), M', M'' for z >= 0.

    ``a`` is a (hi, lo) pair of floats; returns (hi, lo) array pairs.
    """
    n = z.size
    zeros = lambda: (np.zeros(n), np.zeros(n))  # noqa: E731
    t = (np.ones(n), np.zeros(n))
    s = (np.ones(n), np.zeros(n))
    s1 = zeros()
    s2 = zeros()
    absum = np.ones(n)
    absum1 = np.zeros(n)
    absum2 = np.zeros(n)
    err = np.zeros(n)
    nterms = np.ones(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    ah = a[0] + a[1]
    active = np.abs(z) >= 1e-150
    small = ~active
    k = 0
    while active.any():
        idx = np.flatnonzero(active)
        zi = z[idx]
        ak = _add(a, (float(k), 0.0))
        num = _mul_d((np.full(idx.size, ak[0]), np.full(idx.size, ak[1])), zi)
        den = _mul_d(_two_sum(b, float(k)), k + 1.0)
        k += 1
        if ak[0] == 0.0:
            # terminating series (a a non-positive integer)
            nterms[idx] = k
            break
        if k == 1:
            # a/b first: a*z can round in the subnormal range
            ab = _div((np.full(idx.size, a[0]), np.full(idx.size, a[1])), (np.full(idx.size, float(b)), np.zeros(idx.size)))
            tk = _mul_d(ab, zi)
        else:
            tk = _div(_mul(_take(t, idx), num), den)
        bad = ~np.isfinite(tk[0])
        if bad.any():
            status[idx[bad]] = OVERFLOW
            active[idx[bad]] = False
            good = ~bad
            idx, tk = idx[good], (tk[0][good], tk[1][good])
            zi = zi[good]
        _put(t, idx, tk)
        _put(s, idx, _add(_take(s, idx), tk))
        _put(s1, idx, _add(_take(s1, idx), _mul_d(tk, float(k))))
        _put(s2, idx, _add(_take(s2, idx), _mul_d(tk, k * (k - 1.0))))
        absum[idx] += np.abs(tk[0])
        absum1[idx] += k * np.abs(tk[0])
        absum2[idx] += k * (k - 1.0) * np.abs(tk[0])
        if k >= max_terms:
            status[idx] = NO_CONVERGENCE
            active[idx] = False
            break
        # |t_{j+1}/t_j| <= z (|a|+j)/((b+j)(j+1)), nonincreasing in j once
        # b + k > 0 and k^2 > |b|, so rho bounds every later ratio
        if b + k > 0.0 and float(k) * k > abs(b):
            rho = zi * (abs(ah) + k) / ((b + k) * (k + 1.0))
            with np.errstate(divide="ignore", invalid="ignore"):
                tail = np.abs(tk[0]) * rho / (1.0 - rho)
                g = 1.0 / (1.0 - rho)
                # each sum against its own magnitude, floored at double-double
                # precision so zeros of M, M', M'' terminate
                scale = np.maximum(np.abs(s[0][idx]), DD_EPS * absum[idx])
                conv = (
                    (rho < 0.9)
                    & (tail <= tol * scale)
                    & (tail * (k + g) <= tol * np.abs(s1[0][idx]) + DD_EPS * absum1[idx])
                    & (tail * (k + 2.0 * g) ** 2 <= tol * np.abs(s2[0][idx]) + DD_EPS * absum2[idx])
                )
            fin = idx[conv]
            err[fin] = tail[conv] / scale[conv]
            nterms[fin] = k + 1
            active[fin] = False
    with np.errstate(divide="ignore", invalid="ignore"):
        d1 = _div(s1, (z, np.zeros(n)))
        d2 = _div(_div(s2, (z, np.zeros(n))), (z, np.zeros(n)))
    if small.any():
        c1 = _div(a, (b, 0.0))
        c2 = _div(_mul(a, _add(a, (1.0, 0.0))), (b * (b + 1.0), 0.0))
        d1[0][small], d1[1][small] = c1
        d2[0][small], d2[1][small] = c2
    return s, d1, d2, nterms, err, status


def _series_scalar(a, b, z, tol, max_terms):
    """Plain-float loop for one argument; numpy overhead dominates at this size."""
    if abs(z) < 1e-150:
        ah = a[0] + a[1]
        return ((1.0, 0.0), (ah / b, 0.0), (ah * (ah + 1.0) / (b * (b + 1.0)), 0.0), 1, 0.0, OK)
    t = (1.0, 0.0)
    s = (1.0, 0.0)
    s1 = (0.0, 0.0)
    s2 = (0.0, 0.0)
    absum, absum1, absum2 = 1.0, 0.0, 0.0
    ah = a[0] + a[1]
    err = 0.0
    k = 0
    while True:
        ak = _add(a, (float(k), 0.0))
        num = _mul_d(ak, z)
        den = _mul_d(_two_sum(b, float(k)), k + 1.0)
        k += 1
        if ak[0] == 0.0:
            break
        t = _mul_d(_div(a, (float(b), 0.0)), z) if k == 1 else _div(_mul(t, num), den)
        if not math.isfinite(t[0]):
            return None, None, None, k, 0.0, OVERFLOW
        s = _add(s, t)
        s1 = _add(s1, _mul_d(t, float(k)))
        s2 = _add(s2, _mul_d(t, k * (k - 1.0)))
        at = abs(t[0])
        absum += at
        absum1 += k * at
        absum2 += k * (k - 1.0) * at
        if k >= max_terms:
            return None, None, None, k, 0.0, NO_CONVERGENCE
        if b + k > 0.0 and float(k) * k > abs(b):
            rho = z * (abs(ah) + k) / ((b + k) * (k + 1.0))
            if rho < 0.9:
                tail = at * rho / (1.0 - rho)
                g = 1.0 / (1.0 - rho)
                scale = max(abs(s[0]), DD_EPS * absum)
                if (tail <= tol * scale
                        and tail * (k + g) <= tol * abs(s1[0]) + DD_EPS * absum1
                        and tail * (k + 2.0 * g) ** 2 <= tol * abs(s2[0]) + DD_EPS * absum2):
                    err = tail / scale
                    break
    zd = (z, 0.0)
    return s, _div(s1, zd), _div(_div(s2, zd), zd), k + 1, err, OK


def _kummer_small(a, b, z, tol, max_terms, a_lo):
    n = z.size
    val, d1, d2, err = (np.zeros(n) for _ in range(4))
    terms = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    ad = _two_sum(float(a), float(a_lo))
    bma = _add(_two_sum(float(b), -float(a)), (-float(a_lo), 0.0))
    for i, zi in enumerate(z.tolist()):
        if zi >= 0.0:
            v, p, q, nt, e, st = _series_scalar(ad, b, zi, tol, max_terms)
            if st == OK:
                val[i], d1[i], d2[i] = v[0] + v[1], p[0] + p[1], q[0] + q[1]
        else:
            v, p, q, nt, e, st = _series_scalar(bma, b, -zi, DD_EPS, max_terms)
            if st == OK:
                ez = math.exp(zi)
                d1v = _add(v, (-p[0], -p[1]))
                d2v = _add(_add(d1v, (-p[0], -p[1])), q)
                val[i] = ez * (v[0] + v[1])
                d1[i] = ez * (d1v[0] + d1v[1])
                d2[i] = ez * (d2v[0] + d2v[1])
        terms[i], err[i], status[i] = nt, e, st
    return val, d1, d2, terms, err, status


def kummer_array(a, b, z_in, tol, max_terms, a_lo=0.0):
    z = np.ascontiguousarray(z_in, dtype=np.float64).ravel()
    if z.size <= 8:
        return _kummer_small(a, b, z, tol, max_terms, a_lo)
    val = np.empty_like(z)
    d1 = np.empty_like(z)
    d2 = np.empty_like(z)
    err = np.empty_like(z)
    terms = np.empty(z.size, dtype=np.int64)
    status = np.empty(z.size, dtype=np.int8)
    pos = z >= 0.0
    neg = ~pos
    if pos.any():
        v, p, q, nt, e, st = _series(_two_sum(float(a), float(a_lo)), b, z[pos], tol, max_terms)
        val[pos] = v[0] + v[1]
        d1[pos] = p[0] + p[1]
        d2[pos] = q[0] + q[1]
        terms[pos], err[pos], status[pos] = nt, e, st
    if neg.any():
        zn = z[neg]
        # Kummer: M(a;b;z) = e^z M(b-a;b;-z); the derivatives are
        # differences of these sums, so sum to working precision
        bma = _add(_two_sum(float(b), -float(a)), (-float(a_lo), 0.0))
        v, p, q, nt, e, st = _series(bma, b, -zn, DD_EPS, max_terms)
        ez = np.exp(zn)
        d1v = _add(v, _mul_d(p, -1.0))
        d2v = _add(_add(d1v, _mul_d(p, -1.0)), q)
        val[neg] = ez * (v[0] + v[1])
        d1[neg] = ez * (d1v[0] + d1v[1])
        d2[neg] = ez * (d2v[0] + d2v[1])
        terms[neg], err[neg], status[neg] = nt, e, st
    return val, d1, d2, terms, err, status


def _sturm_many(d, e2, xs):
    """Sturm counts for a vector of shifts at once."""
    q = d[0] - xs
    count = (q < 0.0).astype(np.int64)
    for i in range(1, d.size):
        q = np.where(q == 0.0, 1e-300, q)
        q = d[i] - xs - e2[i - 1] / q
        count += q < 0.0
    return count


def sturm_count(d_in, e_in, x):
    d = np.asarray(d_in, dtype=np.float64)
    e2 = np.asarray(e_in, dtype=np.float64) ** 2
    return int(_sturm_many(d, e2, np.array([x], dtype=np.float64))[0])


def tridiag_eigvals_bisect(d_in, e_in, k_lo, k_hi, lo, hi, tol):
    d = np.asarray(d_in, dtype=np.float64)
    e2 = np.asarray(e_in, dtype=np.float64) ** 2
    ks = np.arange(k_lo, k_hi + 1)
    a = np.full(ks.size, float(lo))
    b = np.full(ks.size, float(hi))
    for _ in range(200):
        mid = 0.5 * (a + b)
        live = (mid > a) & (mid < b) & ((b - a) > tol * (np.abs(a) + np.abs(b) + 1e-300))
        if not live.any():
            break
        cnt = _sturm_many(d, e2, mid)
        upper = live & (cnt > ks)
        lower = live & ~(cnt > ks)
        b = np.where(upper, mid, b)
        a = np.where(lower, mid, a)
    return 0.5 * (a + b)


def cn_evolve(psi_in, y_in, dx, coeffs_in, dt_over_hbar):
    psi = np.array(psi_in, dtype=np.complex128)
    y = np.asarray(y_in, dtype=np.float64)
    coeffs = np.asarray(coeffs_in, dtype=np.float64)
    n = psi.size
    kup = (y[:-1] + y[1:]) / (4.0 * dx)
    inv_dx2 = 1.0 / dx**2
    h = 0.5j * dt_over_hbar
    ab = np.zeros((3, n), dtype=np.complex128)
    for al, be, ga in coeffs:
        hd = -2.0 * al * inv_dx2 + be * y * y
        hu = al * inv_dx2 + 1j * ga * kup
        hl = al * inv_dx2 - 1j * ga * kup
        rhs = psi - h * hd * psi
        rhs[:-1] -= h * hu * psi[1:]
        rhs[1:] -= h * hl * psi[:-1]
        ab[0, 1:] = h * hu
        ab[1, :] = 1.0 + h * hd
        ab[2, :-1] = h * hl
        psi = solve_banded((1, 1), ab, rhs, check_finite=False)
    return psi
