# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. ``ptacc._purepy`` mirrors every function here."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, exp, isfinite

cnp.import_array()

# status codes shared with _purepy
DEF OK = 0
DEF NO_CONVERGENCE = 1
DEF OVERFLOW = 2
DEF DD_EPS = 1e-30


# Double-double helpers: a value is the unevaluated sum hi + lo of two doubles.
ctypedef struct dd:
    double hi
    double lo


cdef inline dd _two_sum(double a, double b) noexcept nogil:
    cdef dd r
    cdef double bb
    r.hi = a + b
    bb = r.hi - a
    r.lo = (a - (r.hi - bb)) + (b - bb)
    return r


cdef inline dd _quick(double a, double b) noexcept nogil:
    cdef dd r
    r.hi = a + b
    r.lo = b - (r.hi - a)
    return r


cdef inline dd _add(dd a, dd b) noexcept nogil:
    cdef dd s = _two_sum(a.hi, b.hi)
    return _quick(s.hi, s.lo + a.lo + b.lo)


cdef inline dd _two_prod(double a, double b) noexcept nogil:
    # Veltkamp split; exact without relying on hardware FMA
    cdef dd r
    cdef double c, ah, al, bh, bl
    r.hi = a * b
    c = 134217729.0 * a
    ah = c - (c - a)
    al = a - ah
    c = 134217729.0 * b
    bh = c - (c - b)
    bl = b - bh
    r.lo = ((ah * bh - r.hi) + ah * bl + al * bh) + al * bl
    return r


cdef inline dd _mul(dd a, dd b) noexcept nogil:
    cdef dd p = _two_prod(a.hi, b.hi)
    return _quick(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi)


cdef inline dd _mul_d(dd a, double b) noexcept nogil:
    cdef dd p = _two_prod(a.hi, b)
    return _quick(p.hi, p.lo + a.lo * b)


cdef inline dd _div(dd a, dd b) noexcept nogil:
    cdef double q1 = a.hi / b.hi, q2, q3
    cdef dd r = _add(a, _mul_d(b, -q1))
    q2 = r.hi / b.hi
    r = _add(r, _mul_d(b, -q2))
    q3 = r.hi / b.hi
    r = _quick(q1, q2)
    return _add(r, _dd(q3))


cdef inline dd _dd(double x) noexcept nogil:
    cdef dd r
    r.hi = x
    r.lo = 0.0
    return r


cdef int _series(dd a, double b, double z, double tol, int max_terms,
                 dd *val, dd *d1, dd *d2, int *nterms, double *err) noexcept nogil:
    """Sum M(a;b;z) and its first two z-derivatives for z >= 0."""
    cdef dd t = _dd(1.0), s = _dd(1.0), s1 = _dd(0.0), s2 = _dd(0.0)
    cdef dd num, den, ak
    cdef double absum = 1.0, absum1 = 0.0, absum2 = 0.0, rho, tail, scale, g, ah = a.hi + a.lo
    cdef int k = 0
    if fabs(z) < 1e-150:
        val[0] = _dd(1.0)
        d1[0] = _div(a, _dd(b))
        d2[0] = _div(_mul(a, _add(a, _dd(1.0))), _dd(b * (b + 1.0)))
        nterms[0] = 1
        err[0] = 0.0
        return OK
    while True:
        # t holds term k; produce term k+1
        ak = _add(a, _dd(<double>k))
        num = _mul_d(ak, z)
        den = _mul_d(_two_sum(b, <double>k), k + 1.0)
        k += 1
        if ak.hi == 0.0:
            # terminating series (a a non-positive integer)
            err[0] = 0.0
            break
        if k == 1:
            # a/b first: a*z can round in the subnormal range
            t = _mul_d(_div(a, _dd(b)), z)
        else:
            t = _div(_mul(t, num), den)
        if not isfinite(t.hi):
            return OVERFLOW
        s = _add(s, t)
        s1 = _add(s1, _mul_d(t, <double>k))
        s2 = _add(s2, _mul_d(t, k * (k - 1.0)))
        absum += fabs(t.hi)
        absum1 += k * fabs(t.hi)
        absum2 += k * (k - 1.0) * fabs(t.hi)
        if k >= max_terms:
            return NO_CONVERGENCE
        # |t_{j+1}/t_j| <= z (|a|+j)/((b+j)(j+1)), nonincreasing in j once
        # b + k > 0 and k^2 > |b|, so rho bounds every later ratio
        if b + k > 0.0 and <double>k * k > fabs(b):
            rho = z * (fabs(ah) + k) / ((b + k) * (k + 1.0))
            if rho < 0.9:
                tail = fabs(t.hi) * rho / (1.0 - rho)
                # tails of sum j t_j and sum j^2 t_j under the same geometric bound
                g = 1.0 / (1.0 - rho)
                # each sum against its own magnitude, floored at double-double
                # precision so zeros of M, M', M'' terminate
                scale = fabs(s.hi)
                if scale < DD_EPS * absum:
                    scale = DD_EPS * absum
                if (tail <= tol * scale
                        and tail * (k + g) <= tol * fabs(s1.hi) + DD_EPS * absum1
                        and tail * (k + 2.0 * g) * (k + 2.0 * g) <= tol * fabs(s2.hi) + DD_EPS * absum2):
                    err[0] = tail / scale
                    break
    val[0] = s
    d1[0] = _div(s1, _dd(z))
    d2[0] = _div(_div(s2, _dd(z)), _dd(z))
    nterms[0] = k + 1
    return OK


def kummer_array(double a, double b, z_in, double tol, int max_terms, double a_lo=0.0):
    """M, M', M'' over ``z`` for the double-double parameter a + a_lo."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] z = np.ascontiguousarray(z_in, dtype=np.float64).ravel()
    cdef Py_ssize_t n = z.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] val = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d1 = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d2 = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] err = np.empty(n)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] terms = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] status = np.empty(n, dtype=np.int8)
    cdef dd v, p, q, d1v, d2v, ad = _two_sum(a, a_lo)
    cdef dd bma = _add(_dd(b), _mul_d(ad, -1.0))
    cdef double e, zi, ez
    cdef int nt, st
    with nogil:
        for i in range(n):
            zi = z[i]
            v = _dd(0.0)
            p = _dd(0.0)
            q = _dd(0.0)
            e = 0.0
            nt = 0
            if zi >= 0.0:
                st = _series(ad, b, zi, tol, max_terms, &v, &p, &q, &nt, &e)
                val[i] = v.hi + v.lo
                d1[i] = p.hi + p.lo
                d2[i] = q.hi + q.lo
            else:
                # Kummer: M(a;b;z) = e^z M(b-a;b;-z); the derivatives are
                # differences of these sums, so sum to working precision
                st = _series(bma, b, -zi, DD_EPS, max_terms, &v, &p, &q, &nt, &e)
                ez = exp(zi)
                val[i] = ez * (v.hi + v.lo)
                d1v = _add(v, _mul_d(p, -1.0))
                d2v = _add(_add(d1v, _mul_d(p, -1.0)), q)
                d1[i] = ez * (d1v.hi + d1v.lo)
                d2[i] = ez * (d2v.hi + d2v.lo)
            terms[i] = nt
            err[i] = e
            status[i] = st
    return val, d1, d2, terms, err, status


cdef inline Py_ssize_t _sturm(double *d, double *e2, Py_ssize_t n, double x) noexcept nogil:
    """Number of eigenvalues of the symmetric tridiagonal matrix below x."""
    cdef Py_ssize_t i, count = 0
    cdef double q = d[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = 1e-300
        q = d[i] - x - e2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def sturm_count(d_in, e_in, double x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(d_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e2 = np.ascontiguousarray(e_in, dtype=np.float64) ** 2
    return int(_sturm(&d[0], &e2[0], d.shape[0], x))


def tridiag_eigvals_bisect(d_in, e_in, int k_lo, int k_hi, double lo, double hi,
                           double tol):
    """Eigenvalues with 0-based indices k_lo..k_hi by bisection on Sturm counts."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(d_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e2 = np.ascontiguousarray(e_in, dtype=np.float64) ** 2
    cdef Py_ssize_t n = d.shape[0]
    cdef int m = k_hi - k_lo + 1, j, k
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    cdef double a, b, mid
    cdef int it
    with nogil:
        for j in range(m):
            k = k_lo + j
            a = lo
            b = hi
            for it in range(200):
                mid = 0.5 * (a + b)
                if mid <= a or mid >= b or (b - a) <= tol * (fabs(a) + fabs(b) + 1e-300):
                    break
                if _sturm(&d[0], &e2[0], n, mid) > k:
                    b = mid
                else:
                    a = mid
            out[j] = 0.5 * (a + b)
    return out


def cn_evolve(psi_in, y_in, double dx, coeffs_in, double dt_over_hbar):
    """Crank-Nicolson steps for H = al*D2 + be*diag(y^2) + i*ga*K on interior points.

    D2 is the 3-point Laplacian, K the skew-symmetric form of (y d/dy + 1/2).
    ``coeffs`` has one row (al, be, ga) per step, frozen at the step midpoint.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] psi = np.array(psi_in, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y = np.ascontiguousarray(y_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] coeffs = np.ascontiguousarray(coeffs_in, dtype=np.float64)
    cdef Py_ssize_t n = psi.shape[0], j, step, nsteps = coeffs.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] kup = np.empty(max(n - 1, 1))
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] rhs = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] cp = np.empty(n, dtype=np.complex128)
    cdef double inv_dx2 = 1.0 / (dx * dx), al, be, ga
    cdef double complex h = 0.5j * dt_over_hbar, hd, hu, hl, denom
    cdef double complex lo, di, up
    for j in range(n - 1):
        kup[j] = (y[j] + y[j + 1]) / (4.0 * dx)
    with nogil:
        for step in range(nsteps):
            al = coeffs[step, 0]
            be = coeffs[step, 1]
            ga = coeffs[step, 2]
            # rhs = (1 - h H) psi
            for j in range(n):
                hd = -2.0 * al * inv_dx2 + be * y[j] * y[j]
                rhs[j] = psi[j] - h * hd * psi[j]
                if j + 1 < n:
                    hu = al * inv_dx2 + 1j * ga * kup[j]
                    rhs[j] = rhs[j] - h * hu * psi[j + 1]
                if j > 0:
                    hl = al * inv_dx2 - 1j * ga * kup[j - 1]
                    rhs[j] = rhs[j] - h * hl * psi[j - 1]
            # Thomas solve of (1 + h H) psi_new = rhs
            for j in range(n):
                di = 1.0 + h * (-2.0 * al * inv_dx2 + be * y[j] * y[j])
                if j > 0:
                    lo = h * (al * inv_dx2 - 1j * ga * kup[j - 1])
                    denom = di - lo * cp[j - 1]
                    rhs[j] = (rhs[j] - lo * rhs[j - 1]) / denom
                else:
                    denom = di
                    rhs[j] = rhs[j] / denom
                if j + 1 < n:
                    up = h * (al * inv_dx2 + 1j * ga * kup[j])
                    cp[j] = up / denom
            psi[n - 1] = rhs[n - 1]
            for j in range(n - 2, -1, -1):
                psi[j] = rhs[j] - cp[j] * psi[j + 1]
    return psi
