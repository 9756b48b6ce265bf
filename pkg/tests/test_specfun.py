import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ptacc.errors import NoConvergence, PoleError
from ptacc.specfun import kummer_arrays, kummer_m, kummer_m_derivatives

box_a = st.floats(-10.0, 10.0)
box_b = st.floats(0.05, 10.0)
box_z = st.floats(-30.0, 30.0)


def test_origin():
    r = kummer_m(-3.3, 2.2, 0.0)
    assert r.value == 1.0 and r.d_dz == pytest.approx(-1.5)


@settings(max_examples=200, deadline=None)
@given(box_a, box_z)
def test_exponential_identity(a, z):
    assume(a > 0)
    assert kummer_m(a, a, z).value == pytest.approx(math.exp(z), rel=1e-10)


@pytest.mark.parametrize("a", [5e-324, 1e-310])
def test_subnormal_parameter(a):
    # a*z underflows here; the series must neither stop early nor round the first term
    z = np.linspace(-3.0, 3.0, 41)
    for zz in (0.2, 1.5):
        assert kummer_m(a, a, zz).value == pytest.approx(math.exp(zz), rel=1e-12)
    assert np.allclose(kummer_arrays(a, a, z)[0], np.exp(z), rtol=1e-12, atol=0)


@settings(max_examples=200, deadline=None)
@given(box_a, box_b, box_z)
def test_matches_mpmath(a, b, z):
    ref = float(mp.hyp1f1(a, b, z))
    r = kummer_m(a, b, z)
    # near a zero of M only an absolute bound makes sense
    scale = max(abs(ref), float(mp.hyp1f1(abs(a), b, abs(z))) * 1e-6)
    assert abs(r.value - ref) <= 1e-10 * scale


@settings(max_examples=200, deadline=None)
@given(box_a, box_b, box_z)
def test_derivative_contiguity(a, b, z):
    d1, d2 = kummer_m_derivatives(a, b, z)
    ref1 = a / b * kummer_m(a + 1, b + 1, z).value
    ref2 = a * (a + 1) / (b * (b + 1)) * kummer_m(a + 2, b + 2, z).value
    s1 = float(mp.hyp1f1(abs(a) + 1, b + 1, abs(z))) * abs(a) / b
    s2 = float(mp.hyp1f1(abs(a) + 2, b + 2, abs(z))) * abs(a * (a + 1)) / (b * (b + 1))
    assert abs(d1 - ref1) <= 1e-10 * max(abs(ref1), 1e-6 * s1, 1e-6)
    assert abs(d2 - ref2) <= 1e-10 * max(abs(ref2), 1e-6 * s2, 1e-6)


@pytest.mark.parametrize("z", [-25.0, -1.0, 0.7, 9.0])
def test_terminating_polynomial(z):
    r = kummer_m(-1.0, 1.5, z)
    assert r.value == pytest.approx(1 - 2 * z / 3, rel=1e-12, abs=1e-14)
    assert r.d_dz == pytest.approx(-2 / 3, rel=1e-14)
    assert abs(r.d2_dz2) <= 1e-14
    # a = -2: 1 - 2z/b + z^2/(b(b+1)) with b = 1/2
    assert kummer_m(-2.0, 0.5, z).value == pytest.approx(1 - 4 * z + 4 * z * z / 3, rel=1e-12, abs=1e-12)


def test_erf_relation():
    # M(1/2; 3/2; -z^2) = sqrt(pi) erf(z) / (2z)
    assert kummer_m(0.5, 1.5, -1.0).value == pytest.approx(math.sqrt(math.pi) * math.erf(1.0) / 2, rel=1e-14)


def test_finite_difference_derivative():
    a, b, z, h = 2.3, 1.7, 3.1, 1e-5
    fd = (kummer_m(a, b, z + h).value - kummer_m(a, b, z - h).value) / (2 * h)
    assert kummer_m(a, b, z).d_dz == pytest.approx(fd, rel=1e-6)


def test_est_error_bounds_reference():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a, b, z = rng.uniform(-10, 10), rng.uniform(0.1, 10), rng.uniform(-30, 30)
        r = kummer_m(a, b, z)
        ref = kummer_m(a, b, z, tol_f1=1e-16, max_terms=1000).value
        assert abs(r.value - ref) <= max(r.est_error * abs(r.value), 1e-15 * abs(ref)) * 1.01
        assert r.est_error <= 1e-12


def test_vectorized_matches_scalar():
    z = np.linspace(-20, 20, 41)
    val, d1, d2, terms, err = kummer_arrays(0.3, 1.5, z)
    for i in (0, 13, 40):
        r = kummer_m(0.3, 1.5, z[i])
        assert (val[i], d1[i], d2[i]) == pytest.approx((r.value, r.d_dz, r.d2_dz2), rel=1e-15)


def test_errors():
    with pytest.raises(PoleError):
        kummer_m(1.0, -2.0, 1.0)
    with pytest.raises(PoleError):
        kummer_m(1.0, 0.0, 1.0)
    with pytest.raises(NoConvergence):
        kummer_m(1.0, 1.0, 800.0)
    with pytest.raises(NoConvergence):
        kummer_m(0.5, 1.5, 300.0, max_terms=20)
