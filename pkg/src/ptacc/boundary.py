"""Moving-wall trajectories solving the Ermakov-Pinney equation.

    l'' + Omega l = kappa^2 / l^3

Every solution has the Pinney form l^2 = a u1^2 + b u2^2 + 2 c u1 u2, where
(u1, u2) solve u'' + Omega u = 0 with Wronskian W and a b - c^2 = kappa^2/W^2.
The basis depends on the regime:

    Omega > 0   u1 = sin(nu t),  u2 = cos(nu t),   nu = sqrt(Omega)
    Omega < 0   u1 = sinh(nu t), u2 = cosh(nu t),  nu = sqrt(-Omega)
    Omega = 0   u1 = t,          u2 = 1

For Omega < 0 the coefficients are stored for the sinh/cosh basis but all
evaluation uses the equivalent exponential basis (e^{nu t}, e^{-nu t}), whose
product stays 1 to rounding; with sinh/cosh the identity
cosh^2 - sinh^2 = 1 degrades like eps e^{2 nu t}.

The rescaled time tau(t) = int_0^t dt'/l^2 has the closed form
(1/kappa) [Theta(t) - Theta(0)] with tan Theta = |W| (a u1 + c u2) / (kappa u2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _dd
from .errors import PositivityError, StepFailure, WindowError
from .model import TOL_REGIME, PtRegime, classify_regime

# sinh/cosh products stay finite (and l^4 in the residual) below this
MAX_HYPERBOLIC_ARG = 170.0
TOL_EP = 1e-9


@dataclass(frozen=True)
class BoundaryTrajectory:
    """Pinney-form solution l(t); build with :func:`standard_trajectory` or :func:`constant_trajectory`."""

    kappa: float
    ab_product: float
    a_coef: float
    b_coef: float
    c_coef: float
    regime: PtRegime
    t_max: float = 10.0
    _nu: float = field(init=False, repr=False)
    _nu_dd: tuple = field(init=False, repr=False)
    _coefs: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if not self.kappa > 0:
            raise WindowError("kappa must be positive")
        omega = 4.0 * self.ab_product
        nu = 1.0 if self.regime is PtRegime.EXCEPTIONAL else math.sqrt(abs(omega))
        object.__setattr__(self, "_nu", nu)
        p, e = _dd._two_prod(nu, nu)
        target = 1.0 if self.regime is PtRegime.EXCEPTIONAL else abs(omega)
        object.__setattr__(self, "_nu_dd", (nu, ((target - p) - e) / (2.0 * nu)))
        a, b, c = self.a_coef, self.b_coef, self.c_coef
        if self.regime is PtRegime.BROKEN:
            # sinh = (E+ - E-)/2, cosh = (E+ + E-)/2
            a, b, c = (a + b + 2.0 * c) / 4.0, (a + b - 2.0 * c) / 4.0, (b - a) / 4.0
        object.__setattr__(self, "_coefs", (a, b, c))
        if self.regime is PtRegime.BROKEN and nu * self.t_max > MAX_HYPERBOLIC_ARG:
            raise WindowError(
                f"t_max={self.t_max} exceeds the hyperbolic range sqrt|Omega| t <= {MAX_HYPERBOLIC_ARG}"
            )
        grid = np.linspace(0.0, self.t_max, 4097)
        s = self.ell_squared(grid)
        if not np.all(s > 0):
            bad = grid[np.argmin(s)]
            raise PositivityError(f"l^2 <= 0 at t={bad} inside the validated window")

    @property
    def big_omega(self) -> float:
        return 4.0 * self.ab_product

    @property
    def frequency(self) -> float:
        """nu: angular frequency of the basis (1 at the exceptional point)."""
        return self._nu

    @property
    def period(self) -> float:
        """Period pi/nu of l^2 in the symmetric regime; inf otherwise."""
        return math.pi / self._nu if self.regime is PtRegime.SYMMETRIC else math.inf

    @property
    def wronskian(self) -> float:
        """Wronskian u1 u2' - u1' u2 of the evaluation basis."""
        if self.regime is PtRegime.EXCEPTIONAL:
            return -1.0
        if self.regime is PtRegime.BROKEN:
            return -2.0 * self._nu
        return -self._nu

    # basis u1, u2 (floats) and their first two derivatives (double-double).
    # Derivatives use nu in double-double so that nu^2 = |Omega| to ~1e-32;
    # with a rounded nu the growing terms of the residual stop cancelling.
    def _basis(self, t):
        t = np.asarray(t, dtype=np.float64)
        nu = self._nu
        nud = self._nu_dd
        nu2 = _dd._mul(nud, nud)
        if self.regime is PtRegime.SYMMETRIC:
            s, c = np.sin(nu * t), np.cos(nu * t)
            return ((s, c), (_dd._mul_d(nud, c), _dd._mul_d(nud, -s)),
                    (_dd._mul_d(nu2, -s), _dd._mul_d(nu2, -c)))
        if self.regime is PtRegime.BROKEN:
            self._check_window(t)
            ep, em = np.exp(nu * t), np.exp(-nu * t)
            return ((ep, em), (_dd._mul_d(nud, ep), _dd._mul_d(nud, -em)),
                    (_dd._mul_d(nu2, ep), _dd._mul_d(nu2, em)))
        one, zero = np.ones_like(t), 0.0 * t
        return (t, one), (_dd.dd(one), _dd.dd(zero)), (_dd.dd(zero), _dd.dd(zero))

    def _check_window(self, t):
        tmax = float(np.max(np.abs(t))) if np.size(t) else 0.0
        if not math.isfinite(tmax) or self._nu * tmax > MAX_HYPERBOLIC_ARG:
            raise WindowError(f"|t|={tmax} outside the evaluable range for this trajectory")

    def ell_squared(self, t):
        (u1, u2), _, _ = self._basis(t)
        a, b, c = self._coefs
        return a * u1 * u1 + b * u2 * u2 + 2.0 * c * u1 * u2

    def _forms_dd(self, t):
        """S = l^2, S' and S'' in double-double."""
        (u1, u2), (v1, v2), (w1, w2) = self._basis(t)
        a, b, c = self._coefs
        mul, add = _dd._mul, _dd._add
        u1, u2 = _dd.dd(u1), _dd.dd(u2)

        def quad(x1, x2, y1, y2):
            # a x1 y1 + b x2 y2 + c (x1 y2 + x2 y1)
            r = _dd._mul_d(mul(x1, y1), a)
            r = add(r, _dd._mul_d(mul(x2, y2), b))
            return add(r, _dd._mul_d(add(mul(x1, y2), mul(x2, y1)), c))

        s = quad(u1, u2, u1, u2)
        s1 = _dd._mul_d(quad(u1, u2, v1, v2), 2.0)
        s2 = _dd._mul_d(add(quad(v1, v2, v1, v2), quad(u1, u2, w1, w2)), 2.0)
        return s, s1, s2


def standard_trajectory(kappa: float, ab_product: float, t_max: float = 10.0,
                     tol_regime: float = TOL_REGIME) -> BoundaryTrajectory:
    """The displayed solution with l^2(0) = kappa.

    Omega > 0:  a = kappa/(AB), b = kappa, c = +kappa sqrt(3/(4AB))
    Omega < 0:  a = kappa/|AB|, b = kappa, c = -kappa sqrt(3/(4|AB|))
    Omega = 0:  l^2 = kappa (1 + t^2)
    """
    regime = classify_regime(4.0 * ab_product, tol_regime)
    if regime is PtRegime.EXCEPTIONAL:
        return BoundaryTrajectory(kappa, 0.0, kappa, kappa, 0.0, regime, t_max)
    m = abs(ab_product)
    sign = 1.0 if regime is PtRegime.SYMMETRIC else -1.0
    return BoundaryTrajectory(kappa, ab_product, kappa / m, kappa,
                              sign * kappa * math.sqrt(3.0 / (4.0 * m)), regime, t_max)


def constant_trajectory(kappa: float, big_omega: float, t_max: float = 10.0) -> BoundaryTrajectory:
    """Static wall l^2 = kappa/sqrt(Omega), the equilibrium solution for Omega > 0."""
    if not big_omega > 0:
        raise WindowError("a static wall needs Omega > 0")
    nu = math.sqrt(big_omega)
    return BoundaryTrajectory(kappa, big_omega / 4.0, kappa / nu, kappa / nu, 0.0,
                              PtRegime.SYMMETRIC, t_max)


def eval_boundary(traj: BoundaryTrajectory, t):
    """(l, l_t, l_tt) from the closed form; scalar or array ``t``."""
    s, s1, s2 = traj._forms_dd(t)
    sh = _dd.to_float(s)
    if np.any(sh <= 0):
        raise PositivityError(f"l^2 <= 0 at t={t}")
    ell = np.sqrt(sh)
    ell_t = _dd.to_float(s1) / (2.0 * ell)
    # l^3 l_tt = S S''/2 - S'^2/4, formed in double-double
    num = _dd.sub(_dd._mul_d(_dd._mul(s, s2), 0.5), _dd._mul_d(_dd._mul(s1, s1), 0.25))
    ell_tt = _dd.to_float(num) / (ell * sh)
    if np.ndim(t) == 0:
        return float(ell), float(ell_t), float(ell_tt)
    return ell, ell_t, ell_tt


def ep_residual(traj: BoundaryTrajectory, t, big_omega: float | None = None):
    """l^3 (Omega l + l_tt) - kappa^2, i.e. Omega S^2 + S S''/2 - S'^2/4 - kappa^2.

    ``big_omega`` defaults to 4 A B of the trajectory; pass another value to
    test a trajectory against a different equation.
    """
    om = traj.big_omega if big_omega is None else big_omega
    s, s1, s2 = traj._forms_dd(t)
    r = _dd._mul_d(_dd._mul(s, s), om)
    r = _dd._add(r, _dd._mul_d(_dd._mul(s, s2), 0.5))
    r = _dd.sub(r, _dd._mul_d(_dd._mul(s1, s1), 0.25))
    r = _dd._add(r, (-traj.kappa**2, 0.0))
    out = _dd.to_float(r)
    return float(out) if np.ndim(t) == 0 else out


def swing_energy(traj: BoundaryTrajectory, t):
    """l_t^2 + Omega l^2 = (S'^2/4 + Omega S^2)/S, formed in double-double.

    For Omega < 0 both terms grow like e^{2 nu t} while their sum tends to a
    constant, so the plain float expression loses all digits at large t.
    """
    s, s1, _ = traj._forms_dd(t)
    num = _dd._add(_dd._mul_d(_dd._mul(s1, s1), 0.25), _dd._mul_d(_dd._mul(s, s), traj.big_omega))
    out = _dd.to_float(_dd._div(num, s))
    return float(out) if np.ndim(t) == 0 else out


def _theta(traj: BoundaryTrajectory, t):
    (u1, u2), _, _ = traj._basis(t)
    a, _b, c = traj._coefs
    return np.arctan2(abs(traj.wronskian) * (a * u1 + c * u2), traj.kappa * u2)


def tau_of_t(traj: BoundaryTrajectory, t):
    """tau(t) = int_0^t dt'/l(t')^2 (closed form, exact to rounding)."""
    t_arr = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(t_arr)):
        raise WindowError("t must be finite")
    theta0 = float(_theta(traj, 0.0))
    if traj.regime is PtRegime.SYMMETRIC:
        # Theta gains exactly pi per period of l^2
        period = traj.period
        m = np.floor(t_arr / period)
        tr = t_arr - m * period
        d = np.mod(_theta(traj, tr) - theta0, 2.0 * np.pi)
        d = np.where(d > 1.5 * np.pi, d - 2.0 * np.pi, d)
        out = (m * np.pi + d) / traj.kappa
    else:
        # u2 > 0 throughout: no branch crossing
        out = (_theta(traj, t_arr) - theta0) / traj.kappa
    return float(out) if np.ndim(t) == 0 else out


def tau_limit(traj: BoundaryTrajectory) -> float:
    """lim tau(t) as t -> inf; finite unless Omega > 0."""
    if traj.regime is PtRegime.SYMMETRIC:
        return math.inf
    # u1/u2 -> inf in both remaining bases, so Theta -> pi/2
    return (math.pi / 2 - float(_theta(traj, 0.0))) / traj.kappa


def integrate_ep_numeric(kappa: float, big_omega: float, t_eval, ell0: float, ell_t0: float,
                         rtol: float = 1e-13, atol: float = 1e-13):
    """Integrate l'' = kappa^2/l^3 - Omega l with an adaptive 8th-order Runge-Kutta.

    Independent of the closed form; returns (l, l_t) sampled at ``t_eval``.
    """
    from scipy.integrate import solve_ivp

    if not ell0 > 0:
        raise StepFailure("initial l must be positive")
    t_eval = np.atleast_1d(np.asarray(t_eval, dtype=np.float64))
    t_end = float(t_eval.max())
    if t_end <= 0.0:
        return np.full(t_eval.shape, ell0), np.full(t_eval.shape, ell_t0)

    def rhs(_t, y):
        return [y[1], kappa**2 / y[0] ** 3 - big_omega * y[0]]

    def hits_zero(_t, y):
        return y[0] - 1e-8 * ell0

    hits_zero.terminal = True
    sol = solve_ivp(rhs, (0.0, t_end), [ell0, ell_t0], method="DOP853", t_eval=t_eval,
                    rtol=rtol, atol=atol, events=hits_zero)
    if sol.status != 0 or sol.y.shape[1] != t_eval.size:
        raise StepFailure(f"EP integration failed: {sol.message}")
    return sol.y[0], sol.y[1]
