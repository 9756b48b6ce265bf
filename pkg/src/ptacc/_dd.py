"""Double-double arithmetic on (hi, lo) pairs of floats or numpy arrays.

Error-free transformations (Dekker/Knuth); about 32 significant digits.
"""

_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick(a, b):
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    c = _SPLIT * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLIT * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _add(a, b):
    s, e = _two_sum(a[0], b[0])
    return _quick(s, e + a[1] + b[1])


def _mul(a, b):
    p, e = _two_prod(a[0], b[0])
    return _quick(p, e + a[0] * b[1] + a[1] * b[0])


def _mul_d(a, b):
    p, e = _two_prod(a[0], b)
    return _quick(p, e + a[1] * b)


def _div(a, b):
    q1 = a[0] / b[0]
    r = _add(a, _mul_d(b, -q1))
    q2 = r[0] / b[0]
    r = _add(r, _mul_d(b, -q2))
    q3 = r[0] / b[0]
    return _add(_quick(q1, q2), (q3, 0.0 * q3))


def dd(x):
    return x, 0.0 * x


def to_float(a):
    return a[0] + a[1]


def sub(a, b):
    return _add(a, (-b[0], -b[1]))
