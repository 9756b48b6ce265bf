import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptacc.errors import DomainError
from ptacc.model import (PtRegime, SwansonParams, classify_regime, derive_constants,
                         dyson_coefficients, regime_of, static_spectrum)

finite = st.floats(-5.0, 5.0, allow_nan=False)


def test_derived_constants():
    c = derive_constants(SwansonParams(1.0, 0.3, 0.1))
    assert c.omega_plus == pytest.approx(1.4)
    assert c.omega_minus == pytest.approx(0.6)
    assert c.a_script == pytest.approx(0.2)
    assert c.big_omega == pytest.approx(0.88)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.1, 5.0), finite, finite)
def test_dyson_identity_all_variants(w, al, be):
    p = SwansonParams(w, al, be)
    for i in (1, 2, 3):
        try:
            v = dyson_coefficients(p, i)
        except DomainError:
            continue
        assert abs(4 * v.ab_product - p.big_omega) <= 1e-12 * max(1.0, abs(p.big_omega))


def test_variant_domain_errors():
    with pytest.raises(DomainError):
        dyson_coefficients(SwansonParams(1.0, 1.0, -0.5), 1)
    with pytest.raises(DomainError):
        dyson_coefficients(SwansonParams(1.0, 0.6, 0.4), 2)  # omega_- = 0
    with pytest.raises(DomainError):
        dyson_coefficients(SwansonParams(1.0, 0.3, 0.1), 4)
    with pytest.raises(DomainError):
        dyson_coefficients(SwansonParams(0.0, 0.3, 0.1), 2)


def test_hermitian_limit_variant2():
    # alpha = beta = 0 leaves the plain oscillator p^2/2 + x^2/2
    v = dyson_coefficients(SwansonParams(1.0, 0.0, 0.0), 2)
    assert (v.a_coeff, v.b_coeff) == pytest.approx((0.5, 0.5))


def test_params_validation():
    with pytest.raises(DomainError):
        SwansonParams(math.nan, 0.0, 0.0)
    with pytest.raises(DomainError):
        SwansonParams(1.0, 0.0, 0.0, hbar=0.0)


@pytest.mark.parametrize("omega2,expected", [(0.88, PtRegime.SYMMETRIC), (-1.0, PtRegime.BROKEN),
                                             (0.0, PtRegime.EXCEPTIONAL), (1e-14, PtRegime.EXCEPTIONAL)])
def test_classify(omega2, expected):
    assert classify_regime(omega2) is expected


def test_classify_accepts_params():
    assert classify_regime(SwansonParams(1.0, 1.0, 0.5)) is PtRegime.BROKEN


def test_regime_of_presets():
    assert regime_of(SwansonParams(1.0, 0.3, 0.1)) is PtRegime.SYMMETRIC
    assert regime_of(SwansonParams(1.0, 1.0, 0.5)) is PtRegime.BROKEN
    assert regime_of(SwansonParams(1.0, 0.5, 0.5)) is PtRegime.EXCEPTIONAL


def test_static_spectrum():
    e, ec = static_spectrum(SwansonParams(1.0, 0.3, 0.1), 2)
    assert e == pytest.approx(2.5 * math.sqrt(0.88)) and e == ec
    e, ec = static_spectrum(SwansonParams(1.0, 1.0, 0.5), 0)
    assert e.real == pytest.approx(0.0, abs=1e-15) and e.imag == pytest.approx(0.5)
    assert ec == np.conj(e)
    with pytest.raises(DomainError):
        static_spectrum(SwansonParams(1.0, 0.3, 0.1), -1)
