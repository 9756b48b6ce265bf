"""Finite-difference checks of the exact solutions.

* Crank-Nicolson evolution of the dilated fixed-domain equation
  i hbar phi_t = h(t) phi, compared with the closed-form phi.
* The explicit exponential Dyson map for the Swanson model: with
  A = omega_-/2, B = Omega/(2 omega_-) and g = a_script l^2/(2 hbar omega_-),

      psi(t, y) = exp(g y^2) phi(t, y)

  solves  i hbar psi_t = [ -omega_- hbar^2/(2 l^2) d_yy + omega_+ l^2 y^2/2
                           + hbar a_script (y d_y + 1/2)
                           + i hbar (l_t/l)(y d_y + 1/2) ] psi.
* Rescaling y = sqrt(omega_-/(2 A_i)) z maps that reduced equation onto the
  one for Dyson variant i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .boundary import BoundaryTrajectory, eval_boundary, standard_trajectory
from .dynamics import WavefunctionSpec, _phi_and_derivs, phi_fixed, spec_for
from .errors import DomainError, GaussianOverflowError, StabilityError
from .model import DysonVariant, SwansonParams, dyson_coefficients

TOL_CN = 1e-6
# exp overflows just above 709
MAX_GAUSS_EXPONENT = 700.0


@dataclass
class GridState:
    x: np.ndarray
    psi: np.ndarray  # full grid, Dirichlet endpoints included
    t: float

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.psi) ** 2)) * self.dx)


def _coefficients(spec: WavefunctionSpec, times) -> np.ndarray:
    ell, ell_t, _ = eval_boundary(spec.traj, np.asarray(times, dtype=np.float64))
    al = -spec.hbar**2 * spec.a / ell**2
    be = spec.b * ell**2
    ga = spec.hbar * ell_t / ell
    return np.ascontiguousarray(np.stack([al, be, ga], axis=1))


def initial_state(spec: WavefunctionSpec, t0: float, n_points: int) -> GridState:
    x = np.linspace(-1.0, 1.0, n_points)
    psi = np.zeros(n_points, dtype=np.complex128)
    psi[1:-1] = phi_fixed(spec, t0, x[1:-1])
    return GridState(x, psi, t0)


def evolve_hermitian(spec: WavefunctionSpec, t0: float, t1: float, n_points: int = 2001,
                     dt: float = 1e-4, state: GridState | None = None,
                     tol_cn: float = TOL_CN) -> GridState:
    """Crank-Nicolson from ``t0`` to ``t1`` with coefficients frozen at step midpoints.

    The generator term i hbar (l_t/l)(y d_y + 1/2) uses the skew-symmetric
    centered form, so each step is exactly unitary in the discrete norm.
    """
    if n_points < 3:
        raise DomainError("need at least 3 grid points")
    if state is None:
        state = initial_state(spec, t0, n_points)
    steps = max(1, int(round((t1 - t0) / dt)))
    h = (t1 - t0) / steps
    mids = t0 + h * (np.arange(steps) + 0.5)
    coeffs = _coefficients(spec, mids)
    norm0 = state.norm
    inner = kernels.cn_evolve(state.psi[1:-1], state.x[1:-1], state.dx, coeffs, h / spec.hbar)
    psi = np.zeros_like(state.psi)
    psi[1:-1] = inner
    out = GridState(state.x, psi, t1)
    drift = abs(out.norm - norm0)
    if not np.isfinite(drift) or drift > tol_cn:
        raise StabilityError(f"norm drift {drift:.2e} exceeds {tol_cn:.0e}")
    return out


def l2_error(state: GridState, spec: WavefunctionSpec) -> float:
    """Discrete L2 distance between the grid state and the closed-form phi."""
    exact = np.zeros_like(state.psi)
    exact[1:-1] = phi_fixed(spec, state.t, state.x[1:-1])
    return math.sqrt(float(np.sum(np.abs(state.psi - exact) ** 2)) * state.dx)


def grid_energy(state: GridState, spec: WavefunctionSpec) -> complex:
    """Discrete <psi| h - i hbar u_t u^dagger |psi> / <psi|psi>.

    The moving-frame correction cancels the generator term, leaving the
    kinetic and potential parts on the grid.
    """
    ell = eval_boundary(spec.traj, state.t)[0]
    psi = state.psi
    lap = np.zeros_like(psi)
    lap[1:-1] = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / state.dx**2
    hpsi = -spec.hbar**2 * spec.a / ell**2 * lap + spec.b * ell**2 * state.x**2 * psi
    return complex(np.vdot(psi, hpsi) / np.vdot(psi, psi))


def _dd_reduced(params: SwansonParams) -> DysonVariant:
    """(A, B) = (omega_-/2, Omega/(2 omega_-)) induced by the exponential map."""
    wm = params.omega_minus
    if wm == 0.0:
        raise DomainError("the exponential map needs omega_- != 0")
    return DysonVariant(0, 0.5 * wm, 0.5 * params.big_omega / wm)


def exponential_map_spec(params: SwansonParams, traj: BoundaryTrajectory, n: int = 0,
                         kappa_state: float | None = None) -> WavefunctionSpec:
    return spec_for(_dd_reduced(params), traj, n, params.hbar, kappa_state)


def _psi_parts(params, spec, t, y, sign):
    ell, ell_t, _ = eval_boundary(spec.traj, t)
    g = sign * params.a_script * ell**2 / (2.0 * params.hbar * params.omega_minus)
    expo = g * float(np.max(y * y))
    if expo > MAX_GAUSS_EXPONENT:
        raise GaussianOverflowError(f"Gaussian exponent {expo:.1f} exceeds {MAX_GAUSS_EXPONENT}")
    phi, phi_y, phi_yy = _phi_and_derivs(spec, t, y)
    gauss = np.exp(g * y * y)
    psi = gauss * phi
    psi_y = gauss * (2.0 * g * y * phi + phi_y)
    psi_yy = gauss * ((2.0 * g + 4.0 * g * g * y * y) * phi + 4.0 * g * y * phi_y + phi_yy)
    return psi, psi_y, psi_yy, ell, ell_t


def equivalence_residual_s4(params: SwansonParams, traj: BoundaryTrajectory, t: float,
                            n_points: int = 401, n: int = 0, corrupt: str | None = None) -> float:
    """L2 residual of the mapped state in the reduced Swanson equation.

    The residual is divided by the largest L2 norm among the individual terms
    (i hbar psi_t and the four operator terms). Late in the broken regime
    psi_t decays like 1/l^2 while the terms stay O(1), so dividing by
    |psi_t| alone would only measure rounding in the time difference.

    When the map Gaussian decays (g < 0) the samples cover |y| <= 12/sqrt(-g),
    where psi lives, instead of the whole well.

    ``corrupt`` selects a negative control: ``"eta"`` flips the sign of the
    map's exponent, ``"kappa"`` builds the eigenstate with kappa off by 10%.
    """
    if corrupt not in (None, "eta", "kappa"):
        raise ValueError(f"unknown corruption {corrupt!r}")
    kappa_state = 1.1 * traj.kappa if corrupt == "kappa" else None
    spec = exponential_map_spec(params, traj, n, kappa_state)
    sign = -1.0 if corrupt == "eta" else 1.0
    ell0 = eval_boundary(traj, t)[0]
    g = sign * params.a_script * ell0**2 / (2.0 * params.hbar * params.omega_minus)
    y_max = min(1.0, 12.0 / math.sqrt(-g)) if g < 0 else 1.0
    y = np.linspace(-y_max, y_max, n_points)
    if y_max == 1.0:
        y = y[1:-1]
    hb = params.hbar
    ht = 1e-6 * max(1.0, abs(t))
    psi_p = _psi_parts(params, spec, t + ht, y, sign)[0]
    psi_m = _psi_parts(params, spec, t - ht, y, sign)[0]
    lhs = 1j * hb * (psi_p - psi_m) / (2.0 * ht)
    psi, psi_y, psi_yy, ell, ell_t = _psi_parts(params, spec, t, y, sign)
    dil = y * psi_y + 0.5 * psi
    terms = (-params.omega_minus * hb**2 / (2.0 * ell**2) * psi_yy,
             0.5 * params.omega_plus * ell**2 * y * y * psi,
             hb * params.a_script * dil,
             1j * hb * (ell_t / ell) * dil)
    rhs = sum(terms)
    scale = max([float(np.linalg.norm(lhs))] + [float(np.linalg.norm(x)) for x in terms] + [1e-300])
    return float(np.linalg.norm(lhs - rhs)) / scale


def _reduced_coefficients(a_coeff: float, ell: float, ep_term: float, hbar: float):
    """(i phi_t, phi_yy, y^2 phi) coefficients of
    i 4 hbar A l^2 phi_t = -4 hbar^2 A^2 phi_yy + l^3 (Omega l + l_tt) y^2 phi."""
    return np.array([4.0 * hbar * a_coeff * ell**2, -4.0 * hbar**2 * a_coeff**2, ep_term])


def rescale_check(params: SwansonParams, variant: int | DysonVariant, kappa: float = 1.0,
                  samples: int = 10, seed: int = 0) -> float:
    """Largest relative coefficient mismatch after y = s z, s^2 = omega_-/(2 A_i).

    Compares the reduced equation of the exponential map, rescaled and
    multiplied by 2 A_i/omega_-, with variant i's reduced equation at random
    (t, z); the y-dependence enters only through y^2 = s^2 z^2.
    """
    v = variant if isinstance(variant, DysonVariant) else dyson_coefficients(params, variant)
    red = _dd_reduced(params)
    s2 = params.omega_minus / (2.0 * v.a_coeff)
    if not s2 > 0:
        raise DomainError(f"omega_-/(2 A_{v.index}) = {s2} <= 0: rescaling root is imaginary")
    traj = standard_trajectory(kappa, v.ab_product)
    rng = np.random.default_rng(seed)
    worst = 0.0
    hb = params.hbar
    for t, z in zip(rng.uniform(0.0, traj.t_max, samples), rng.uniform(-1.0, 1.0, samples)):
        ell, _, ell_tt = eval_boundary(traj, t)
        ep = ell**3 * (traj.big_omega * ell + ell_tt)
        src = _reduced_coefficients(red.a_coeff, ell, ep, hb)
        # d_yy = d_zz / s^2 and y^2 = s^2 z^2, then scale the whole equation
        mapped = np.array([src[0], src[1] / s2, src[2] * s2 * z * z]) * (2.0 * v.a_coeff / params.omega_minus)
        target = _reduced_coefficients(v.a_coeff, ell, ep, hb) * np.array([1.0, 1.0, z * z])
        rel = np.abs(mapped - target) / np.maximum(np.abs(target), 1e-300)
        worst = max(worst, float(np.max(rel)))
    return worst
