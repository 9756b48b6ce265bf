import numpy as np
import pytest

from ptacc.boundary import standard_trajectory
from ptacc.dynamics import build_spec, energy_closed_form
from ptacc.errors import DomainError, GaussianOverflowError, StabilityError
from ptacc.model import SwansonParams
from ptacc.pde import (equivalence_residual_s4, evolve_hermitian, grid_energy, initial_state,
                       l2_error, rescale_check)

SYM = SwansonParams(1.0, 0.3, 0.1)
BRK = SwansonParams(1.0, 1.0, 0.5)


@pytest.mark.parametrize("p", [SYM, BRK], ids=["symmetric", "broken"])
def test_cn_matches_exact(p):
    spec = build_spec(p, 2, 1.0, 0, 10.0)
    st = evolve_hermitian(spec, 0.0, 0.5, 801, 1e-3)
    assert l2_error(st, spec) < 1e-4
    assert abs(st.norm - initial_state(spec, 0.0, 801).norm) < 1e-12


def test_cn_excited_state():
    spec = build_spec(SYM, 2, 1.0, 2, 10.0)
    st = evolve_hermitian(spec, 1.0, 1.5, 1201, 1e-3)
    assert l2_error(st, spec) < 1e-4


def test_cn_chained_equals_single():
    spec = build_spec(SYM, 2, 1.0, 0, 10.0)
    one = evolve_hermitian(spec, 0.0, 0.2, 401, 1e-3)
    half = evolve_hermitian(spec, 0.0, 0.1, 401, 1e-3)
    two = evolve_hermitian(spec, 0.1, 0.2, 401, 1e-3, state=half)
    assert np.allclose(one.psi, two.psi, atol=1e-13)


def test_grid_energy_matches_closed_form():
    spec = build_spec(BRK, 2, 1.0, 0, 10.0)
    st = initial_state(spec, 0.8, 2001)
    e = grid_energy(st, spec)
    assert e.real == pytest.approx(float(energy_closed_form(spec, 0.8)), rel=1e-5)
    assert abs(e.imag) < 1e-10


def test_cn_errors():
    spec = build_spec(SYM, 2, 1.0, 0, 10.0)
    with pytest.raises(DomainError):
        evolve_hermitian(spec, 0.0, 0.1, 2)
    with pytest.raises(StabilityError):
        evolve_hermitian(spec, 0.0, 0.1, 201, 1e-2, tol_cn=-1.0)


@pytest.mark.parametrize("p", [SYM, BRK], ids=["symmetric", "broken"])
@pytest.mark.parametrize("t", [0.3, 2.0, 6.0])
def test_s4_residual(p, t):
    traj = standard_trajectory(1.0, p.big_omega / 4, 10.0)
    assert equivalence_residual_s4(p, traj, t) <= 1e-5


@pytest.mark.parametrize("p", [SYM, BRK], ids=["symmetric", "broken"])
def test_s4_negative_controls(p):
    traj = standard_trajectory(1.0, p.big_omega / 4, 10.0)
    for corrupt in ("eta", "kappa"):
        assert equivalence_residual_s4(p, traj, 0.3, corrupt=corrupt) >= 1e-2


def test_s4_overflow_detected():
    traj = standard_trajectory(1.0, BRK.big_omega / 4, 10.0)
    with pytest.raises(GaussianOverflowError):
        equivalence_residual_s4(BRK, traj, 9.0, corrupt="eta")


def test_s4_bad_corruption():
    traj = standard_trajectory(1.0, SYM.big_omega / 4, 10.0)
    with pytest.raises(ValueError):
        equivalence_residual_s4(SYM, traj, 0.3, corrupt="nope")


@pytest.mark.parametrize("p", [SYM, BRK], ids=["symmetric", "broken"])
@pytest.mark.parametrize("variant", [1, 2, 3])
def test_rescale(p, variant):
    assert rescale_check(p, variant) <= 1e-12


def test_rescale_imaginary_root():
    # omega_- = 3 > 0 while A_1 = (1 - 2)/2 < 0
    p = SwansonParams(1.0, -1.0, -1.0)
    with pytest.raises(DomainError):
        rescale_check(p, 1)


def test_hermitian_limit_s4():
    p = SwansonParams(1.0, 0.0, 0.0)
    traj = standard_trajectory(1.0, 0.25, 10.0)
    assert equivalence_residual_s4(p, traj, 1.0) <= 1e-5
