"""Exact solutions of the Swanson oscillator in a moving infinite well.

The well wall follows l(t) solving the Ermakov-Pinney equation; states are
built from even and odd Kummer functions and checked against finite
differences and a Crank-Nicolson solver.
"""

from .boundary import (BoundaryTrajectory, eval_boundary, ep_residual, standard_trajectory,
                       swing_energy, tau_of_t)
from .dynamics import (Formulation, WavefunctionSpec, average_energy_fixed, average_energy_moving,
                       build_spec, density_field, energy_closed_form, energy_series, phi_fixed,
                       phi_moving)
from .eigen import EigenState, Parity, fd_oracle, solve_eigenvalues
from .errors import PtaccError
from .kernels import BACKEND
from .model import PtRegime, SwansonParams, dyson_coefficients, regime_of
from .specfun import kummer_m

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BoundaryTrajectory", "EigenState", "Formulation", "Parity", "PtRegime",
    "PtaccError", "SwansonParams", "WavefunctionSpec", "average_energy_fixed",
    "average_energy_moving", "build_spec", "density_field", "dyson_coefficients",
    "energy_closed_form", "energy_series", "ep_residual", "eval_boundary", "fd_oracle",
    "kummer_m", "standard_trajectory", "phi_fixed", "phi_moving", "regime_of",
    "solve_eigenvalues", "swing_energy", "tau_of_t",
]
