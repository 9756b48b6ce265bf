"""Exact time-dependent states, average energies and densities.

Fixed domain y in [-1, 1]:

    phi(t, y) = c exp(i l l_t y^2 / (4 A hbar) - i hbar A eps tau(t)) chi(y)

Moving domain x in [-l(t), l(t)]:  phi~(t, x) = phi(t, x/l) / sqrt(l).

The phase rate hbar*A*eps follows from substituting the gauge factor into
i hbar phi_t = h phi with h the dilated Hermitian Hamiltonian

    h = -hbar^2 A/l^2 d_yy + B l^2 y^2 + i hbar (l_t/l)(y d_y + 1/2)

and using the Ermakov-Pinney equation l^3 (Omega l + l_tt) = kappa^2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .boundary import BoundaryTrajectory, eval_boundary, standard_trajectory, swing_energy, tau_of_t
from .eigen import EigenState, solve_eigenvalues
from .errors import DomainError
from .model import SwansonParams, DysonVariant, dyson_coefficients

TOL_ENERGY = 1e-9
QUAD_START = 200
QUAD_MAX = 6400
# closed-form eigenfunctions with a larger wall residual are not trusted
MAX_BOUNDARY_RESIDUAL = 1e-8


class Formulation(enum.Enum):
    MOVING_DOMAIN_HERMITIAN = "MovingDomainHermitian"
    FIXED_DOMAIN_CORRECTED = "FixedDomainCorrected"


@dataclass(frozen=True)
class WavefunctionSpec:
    variant: DysonVariant
    traj: BoundaryTrajectory
    state: EigenState
    hbar: float = 1.0

    def __post_init__(self):
        q = abs(self.traj.kappa / (2.0 * self.hbar * self.variant.a_coeff))
        if abs(q - self.state.q) > 1e-12 * q:
            raise DomainError(f"state q={self.state.q} does not match kappa/(2 hbar A)={q}")
        if abs(4.0 * self.traj.ab_product - 4.0 * self.variant.ab_product) > 1e-12 * max(
            1.0, abs(4.0 * self.variant.ab_product)
        ):
            raise DomainError("trajectory Omega differs from 4 A B of the variant")
        if self.state.boundary_residual > MAX_BOUNDARY_RESIDUAL:
            raise DomainError(
                f"eigenfunction wall residual {self.state.boundary_residual:.1e} too large (q={q})"
            )

    @property
    def a(self) -> float:
        return self.variant.a_coeff

    @property
    def b(self) -> float:
        return self.variant.b_coeff


def oscillator_strength(kappa: float, a_coeff: float, hbar: float = 1.0) -> float:
    """q = |kappa / (2 hbar A)|; the eigenproblem only sees q^2."""
    return abs(kappa / (2.0 * hbar * a_coeff))


def build_spec(params: SwansonParams, variant: int | DysonVariant, kappa: float, n: int = 0,
               t_max: float = 10.0) -> WavefunctionSpec:
    """Assemble variant, trajectory and eigenstate for one run."""
    v = variant if isinstance(variant, DysonVariant) else dyson_coefficients(params, variant)
    traj = standard_trajectory(kappa, v.ab_product, t_max)
    return spec_for(v, traj, n, params.hbar)


def spec_for(variant: DysonVariant, traj: BoundaryTrajectory, n: int = 0,
             hbar: float = 1.0, kappa_state: float | None = None) -> WavefunctionSpec:
    """Spec for an explicit variant and trajectory.

    ``kappa_state`` builds the eigenstate from a different kappa than the
    trajectory (used by negative controls); the consistency check is then
    skipped.
    """
    k = traj.kappa if kappa_state is None else kappa_state
    q = oscillator_strength(k, variant.a_coeff, hbar)
    state = _eigenstate(q, n)
    if kappa_state is not None:
        spec = object.__new__(WavefunctionSpec)
        for name, val in (("variant", variant), ("traj", traj), ("state", state), ("hbar", hbar)):
            object.__setattr__(spec, name, val)
        return spec
    return WavefunctionSpec(variant, traj, state, hbar)


@lru_cache(maxsize=64)
def _eigenstate(q: float, n: int) -> EigenState:
    return solve_eigenvalues(q, n)[n]


def _phase_parts(spec: WavefunctionSpec, t: float):
    ell, ell_t, ell_tt = eval_boundary(spec.traj, t)
    theta = ell * ell_t / (4.0 * spec.a * spec.hbar)
    tau = tau_of_t(spec.traj, t)
    time_phase = np.exp(-1j * spec.hbar * spec.a * spec.state.epsilon * tau)
    return ell, ell_t, theta, time_phase


def _phi_parts(spec: WavefunctionSpec, t: float, y):
    """Pieces of phi = g chi at fixed-domain points ``y``.

    Returns g = c e^{i theta y^2} e^{-i hbar A eps tau}, chi, chi_y, chi_yy and
    theta; derivatives of phi follow by the chain rule.
    """
    y = np.asarray(y, dtype=np.float64)
    _, _, theta, tp = _phase_parts(spec, t)
    chi, chi_y = spec.state.chi(y)
    chi_yy = (spec.state.q**2 * y * y - spec.state.epsilon) * chi
    g = spec.state.c_norm * tp * np.exp(1j * theta * y * y)
    return g, chi, chi_y, chi_yy, theta


def _phi_and_derivs(spec: WavefunctionSpec, t: float, y):
    """phi, phi_y, phi_yy at fixed-domain points ``y``."""
    g, chi, chi_y, chi_yy, theta = _phi_parts(spec, t, y)
    y = np.asarray(y, dtype=np.float64)
    phi = g * chi
    phi_y = g * (2j * theta * y * chi + chi_y)
    phi_yy = g * ((2j * theta - 4.0 * theta**2 * y * y) * chi + 4j * theta * y * chi_y + chi_yy)
    return phi, phi_y, phi_yy


def phi_fixed(spec: WavefunctionSpec, t: float, x):
    """phi(t, x) on the fixed domain |x| <= 1."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(x) > 1.0):
        raise DomainError("fixed-domain points must satisfy |x| <= 1")
    ell, ell_t, theta, tp = _phase_parts(spec, t)
    chi, _ = spec.state.chi(x)
    out = spec.state.c_norm * tp * np.exp(1j * theta * x * x) * chi
    return complex(out) if out.ndim == 0 else out


def phi_moving(spec: WavefunctionSpec, t: float, x):
    """phi~(t, x) = phi(t, x/l)/sqrt(l) on the physical domain |x| <= l(t)."""
    x = np.asarray(x, dtype=np.float64)
    ell = eval_boundary(spec.traj, t)[0]
    y = x / ell
    if np.any(np.abs(y) > 1.0 + 1e-14):
        raise DomainError(f"points outside the walls |x| <= {ell}")
    out = phi_fixed(spec, t, np.clip(y, -1.0, 1.0)) / math.sqrt(ell)
    return out


@lru_cache(maxsize=16)
def _gl(n: int):
    return np.polynomial.legendre.leggauss(n)


def _adaptive(integral, quad_points: int | None, tol: float = TOL_ENERGY):
    """Run ``integral(nodes, weights)`` on [-1, 1], doubling nodes until converged."""
    if quad_points is not None:
        return integral(*_gl(quad_points))
    n = QUAD_START
    prev = integral(*_gl(n))
    while n < QUAD_MAX:
        n *= 2
        cur = integral(*_gl(n))
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    return prev


# The theta^2 piece of the kinetic term, l_t^2 y^2/(4A) |phi|^2, is merged with
# the potential B l^2 y^2 |phi|^2 into (l_t^2 + Omega l^2) y^2/(4A) |phi|^2, with
# l_t^2 + Omega l^2 taken from swing_energy: for Omega < 0 the two pieces are
# each of size e^{2 nu t} and cancel to O(1).


def average_energy_moving(spec: WavefunctionSpec, t: float, quad_points: int | None = None) -> complex:
    """<phi~| -hbar^2 A d_xx + B x^2 |phi~> over the physical domain [-l, l]."""
    ell = eval_boundary(spec.traj, t)[0]
    swing = swing_energy(spec.traj, t)
    kin = -spec.hbar**2 * spec.a

    def integral(nodes, weights):
        x = ell * nodes
        s = x / ell
        g, chi, chi_y, chi_yy, theta = _phi_parts(spec, t, s)
        pt = g * chi / math.sqrt(ell)
        # d_xx phi~ less its -4 theta^2 x^2/l^4 phi~ part
        pt_xx = g * (2j * theta * chi + 4j * theta * s * chi_y + chi_yy) / ell**2.5
        integrand = (np.conj(pt) * kin * pt_xx
                     + swing * x * x / (4.0 * spec.a * ell**2) * np.abs(pt) ** 2)
        return complex(ell * np.dot(weights, integrand))

    return _adaptive(integral, quad_points)


def average_energy_fixed(spec: WavefunctionSpec, t: float, quad_points: int | None = None) -> complex:
    """<phi| h - i hbar u_t u^dagger |phi> on [-1, 1].

    The dilated Hamiltonian h carries the generator term
    i hbar (l_t/l)(y d_y + 1/2), which the moving-frame correction removes.
    Both are applied, and combined before the rest of h since each grows
    with theta.
    """
    ell, ell_t, _ = eval_boundary(spec.traj, t)
    swing = swing_energy(spec.traj, t)

    def integral(nodes, weights):
        g, chi, chi_y, chi_yy, theta = _phi_parts(spec, t, nodes)
        phi = g * chi
        phi_y = g * (2j * theta * nodes * chi + chi_y)
        # phi_yy less its -4 theta^2 y^2 phi part
        phi_yy_rest = g * (2j * theta * chi + 4j * theta * nodes * chi_y + chi_yy)
        gen = 1j * spec.hbar * (ell_t / ell) * (nodes * phi_y + 0.5 * phi)
        corr = 1j * spec.hbar * (ell_t / ell) * (nodes * phi_y + 0.5 * phi)
        h_rest = (-spec.hbar**2 * spec.a / ell**2) * phi_yy_rest + swing / (4.0 * spec.a) * nodes**2 * phi
        return complex(np.dot(weights, np.conj(phi) * (h_rest + (gen - corr))))

    return _adaptive(integral, quad_points)


def energy_closed_form(spec: WavefunctionSpec, t) -> np.ndarray:
    """E(t) = hbar^2 A K/l^2 + Y (l_t^2 + Omega l^2)/(4A), K = <chi'^2>, Y = <y^2 chi^2>.

    With l_t^2 + Omega l^2 = C - kappa^2/l^2 (the Ermakov-Pinney first
    integral) this is periodic for Omega > 0 and tends to a constant for
    Omega < 0.

    Independent of the quadrature routines above; used as a cross-check.
    """
    nodes, weights = _gl(800)
    chi, chi_y = spec.state.chi(nodes)
    c2 = spec.state.c_norm**2
    k_int = c2 * float(np.dot(weights, chi_y**2))
    y_int = c2 * float(np.dot(weights, nodes**2 * chi**2))
    ell = eval_boundary(spec.traj, t)[0]
    return spec.hbar**2 * spec.a * k_int / ell**2 + y_int * swing_energy(spec.traj, t) / (4.0 * spec.a)


@dataclass
class EnergySeries:
    times: np.ndarray
    values: dict = field(default_factory=dict)

    def formulations(self):
        return list(self.values)


def energy_series(spec: WavefunctionSpec, times, formulations=tuple(Formulation),
                  quad_points: int | None = None) -> EnergySeries:
    times = np.asarray(times, dtype=np.float64)
    funcs = {
        Formulation.MOVING_DOMAIN_HERMITIAN: average_energy_moving,
        Formulation.FIXED_DOMAIN_CORRECTED: average_energy_fixed,
    }
    out = EnergySeries(times)
    for f in formulations:
        out.values[f] = np.array([funcs[f](spec, float(t), quad_points) for t in times])
    return out


@dataclass
class DensityField:
    """rho(t, x) = |phi~|^2 sampled on x = l(t) * y for a fixed y grid."""

    times: np.ndarray
    y: np.ndarray
    x: np.ndarray  # shape (nt, ny)
    rho: np.ndarray  # shape (nt, ny)
    ell: np.ndarray
    norm: np.ndarray
    radius99: np.ndarray
    variance: np.ndarray


def _mass_within(spec: WavefunctionSpec, t: float, r: float) -> float:
    """int_{-r}^{r} rho(t, x) dx by Gauss-Legendre on the physical axis."""
    nodes, weights = _gl(400)
    x = r * nodes
    rho = np.abs(phi_moving(spec, t, x)) ** 2
    return float(r * np.dot(weights, rho))


def mass_radius(spec: WavefunctionSpec, t: float, fraction: float = 0.99) -> float:
    """Smallest r with int_{-r}^{r} rho = ``fraction`` (bisection to 1e-12 l)."""
    ell = eval_boundary(spec.traj, t)[0]
    lo, hi = 0.0, ell
    while hi - lo > 1e-12 * ell:
        mid = 0.5 * (lo + hi)
        if _mass_within(spec, t, mid) < fraction:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def density_field(spec: WavefunctionSpec, t_grid, x_resolution: int = 201) -> DensityField:
    t_grid = np.asarray(t_grid, dtype=np.float64)
    if t_grid.size == 0 or x_resolution < 2:
        raise DomainError("density grids must be nonempty (x_resolution >= 2)")
    y = np.linspace(-1.0, 1.0, x_resolution)
    nodes, weights = _gl(400)
    rows, xs, ells, norms, radii, var = [], [], [], [], [], []
    for t in t_grid:
        ell = eval_boundary(spec.traj, float(t))[0]
        x = ell * y
        xs.append(x)
        rows.append(np.abs(phi_moving(spec, float(t), x)) ** 2)
        xq = ell * nodes
        rq = np.abs(phi_moving(spec, float(t), xq)) ** 2
        norms.append(float(ell * np.dot(weights, rq)))
        var.append(float(ell * np.dot(weights, xq * xq * rq)))
        radii.append(mass_radius(spec, float(t)))
        ells.append(ell)
    return DensityField(t_grid, y, np.array(xs), np.array(rows), np.array(ells),
                        np.array(norms), np.array(radii), np.array(var))
