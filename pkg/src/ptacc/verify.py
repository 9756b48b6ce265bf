"""Quick oracle suite behind ``ptacc verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boundary import ep_residual, standard_trajectory, tau_of_t
from .dynamics import (average_energy_fixed, average_energy_moving, build_spec, density_field)
from .eigen import fd_oracle, solve_eigenvalues
from .errors import DomainError
from .model import SwansonParams, dyson_coefficients
from .pde import equivalence_residual_s4, evolve_hermitian, l2_error, rescale_check
from .specfun import kummer_m


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value)) and self.value <= self.threshold


def run_checks(params: SwansonParams, variant: int, kappa: float, n: int, t_max: float,
               tol_energy: float = 1e-8) -> list[Check]:
    from scipy.integrate import quad

    out: list[Check] = []
    om = params.big_omega
    worst = 0.0
    for i in (1, 2, 3):
        try:
            v = dyson_coefficients(params, i)
        except DomainError:
            continue
        worst = max(worst, abs(4.0 * v.ab_product - om) / max(1.0, abs(om)))
    out.append(Check("model: |4AB - Omega|", worst, 1e-12))

    v = dyson_coefficients(params, variant)
    traj = standard_trajectory(kappa, v.ab_product, t_max)
    t = np.linspace(0.0, t_max, 2000)
    out.append(Check("boundary: EP residual / kappa^2",
                     float(np.max(np.abs(ep_residual(traj, t)))) / kappa**2, 1e-9))
    tau_err = max(abs(tau_of_t(traj, s) - quad(lambda u: 1.0 / traj.ell_squared(u), 0.0, s,
                                                epsabs=1e-13, epsrel=1e-13, limit=200)[0])
                  for s in (0.5, 1.0, min(3.0, t_max)))
    out.append(Check("boundary: tau vs quadrature", tau_err, 1e-9))

    z = np.array([-7.5, 0.3, 4.0, 12.0])
    spec_err = max(abs(kummer_m(1.7, 1.7, zz).value / math.exp(zz) - 1.0) for zz in z)
    spec_err = max(spec_err, max(abs(kummer_m(-1.0, 1.5, zz).value - (1.0 - 2.0 * zz / 3.0))
                                 / max(1.0, abs(1.0 - 2.0 * zz / 3.0)) for zz in z))
    out.append(Check("specfun: M identities", spec_err, 1e-10))

    q = abs(kappa / (2.0 * params.hbar * v.a_coeff))
    states = solve_eigenvalues(q, n)
    fd = fd_oracle(q, 4000, n)
    eig_err = max(abs(s.epsilon - f) / f for s, f in zip(states, fd))
    out.append(Check("eigen: shooting vs finite differences", eig_err, 1e-6))

    spec = build_spec(params, variant, kappa, n, t_max)
    ts = np.linspace(0.0, t_max, 7)
    em = np.array([average_energy_moving(spec, s) for s in ts])
    ef = np.array([average_energy_fixed(spec, s) for s in ts])
    out.append(Check("dynamics: moving vs fixed energy",
                     float(np.max(np.abs(em - ef) / np.maximum(1.0, np.abs(ef)))), tol_energy))
    out.append(Check("dynamics: Im E / (1 + |Re E|)",
                     float(np.max(np.abs(ef.imag) / (1.0 + np.abs(ef.real)))), 1e-8))
    dens = density_field(spec, np.linspace(0.0, t_max, 5), 64)
    out.append(Check("dynamics: density normalization", float(np.max(np.abs(dens.norm - 1.0))), 1e-8))

    t1 = min(1.0, t_max)
    st = evolve_hermitian(spec, 0.0, t1, 2001, 1e-4)
    out.append(Check("pde: Crank-Nicolson vs exact (L2)", l2_error(st, spec), 1e-5))

    if params.omega_minus != 0.0:
        s4 = equivalence_residual_s4(params, standard_trajectory(kappa, om / 4.0, t_max), min(0.3, t_max))
        out.append(Check("pde: exponential-map residual", s4, 1e-5))
    try:
        out.append(Check("pde: rescaling coefficient mismatch", rescale_check(params, variant, kappa), 1e-12))
    except DomainError:
        pass
    return out
