"""Swanson model constants, Dyson-map coefficient sets and PT-regime tags."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import DomainError

TOL_REGIME = 1e-12


class PtRegime(enum.Enum):
    SYMMETRIC = "symmetric"
    BROKEN = "broken"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class SwansonParams:
    """H = (w-/2) p^2 + (w+/2) x^2 + (i/2) A {x, p} with w± = w ± (alpha+beta), A = alpha-beta."""

    omega: float
    alpha: float
    beta: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("omega", "alpha", "beta", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.hbar <= 0:
            raise DomainError("hbar must be positive")

    @property
    def omega_plus(self) -> float:
        return self.omega + (self.alpha + self.beta)

    @property
    def omega_minus(self) -> float:
        return self.omega - (self.alpha + self.beta)

    @property
    def a_script(self) -> float:
        return self.alpha - self.beta

    @property
    def big_omega(self) -> float:
        return self.omega**2 - 4.0 * self.alpha * self.beta


@dataclass(frozen=True)
class DerivedConstants:
    omega_plus: float
    omega_minus: float
    a_script: float
    big_omega: float


@dataclass(frozen=True)
class DysonVariant:
    index: int
    a_coeff: float
    b_coeff: float

    @property
    def ab_product(self) -> float:
        return self.a_coeff * self.b_coeff


def derive_constants(p: SwansonParams) -> DerivedConstants:
    return DerivedConstants(p.omega_plus, p.omega_minus, p.a_script, p.big_omega)


def dyson_coefficients(p: SwansonParams, index: int) -> DysonVariant:
    """Coefficients (A_i, B_i) of the Hermitian oscillator A p^2 + B x^2 for map ``index``.

    All three choices share 4 A_i B_i = omega^2 - 4 alpha beta. Raises
    :class:`DomainError` where a denominator vanishes or, for variant 1,
    when alpha*beta < 0.
    """
    w, al, be = p.omega, p.alpha, p.beta
    if w == 0.0:
        raise DomainError("omega must be nonzero for every Dyson variant")
    if index == 1:
        if al * be < 0.0:
            raise DomainError("variant 1 needs alpha*beta >= 0 (real sqrt)")
        r = 2.0 * math.sqrt(al * be)
        a = (w - r) / (2.0 * w)
        b = w * (w + r) / 2.0
    elif index == 2:
        wm = w - al - be
        if wm == 0.0:
            raise DomainError("variant 2 needs omega != alpha+beta")
        a = wm / (2.0 * w)
        b = 0.5 * w * p.big_omega / wm
    elif index == 3:
        wp = w + al + be
        if wp == 0.0:
            raise DomainError("variant 3 needs omega != -(alpha+beta)")
        a = p.big_omega / (2.0 * w * wp)
        b = w * wp / 2.0
    else:
        raise DomainError(f"unknown Dyson variant {index!r}; expected 1, 2 or 3")
    if a == 0.0:
        # A = 0 kills the kinetic term; the oscillator strength kappa/(2 hbar A) diverges
        raise DomainError(f"variant {index} has A = 0 (exceptional point)")
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(a * b)):
        raise DomainError(f"variant {index} coefficients overflow (denominator too close to 0)")
    return DysonVariant(index, a, b)


def classify_regime(big_omega, tol_regime: float = TOL_REGIME) -> PtRegime:
    """Regime from Omega; a :class:`SwansonParams` is classified with a relative band."""
    if isinstance(big_omega, SwansonParams):
        return regime_of(big_omega, tol_regime)
    if abs(big_omega) <= tol_regime:
        return PtRegime.EXCEPTIONAL
    return PtRegime.SYMMETRIC if big_omega > 0 else PtRegime.BROKEN


def regime_of(p: SwansonParams, tol_regime: float = TOL_REGIME) -> PtRegime:
    # relative band: scale by the size of the terms entering omega^2 - 4 alpha beta
    scale = max(1.0, p.omega**2, abs(4.0 * p.alpha * p.beta))
    return classify_regime(p.big_omega, tol_regime * scale)


def static_spectrum(p: SwansonParams, n: int) -> tuple[complex, complex]:
    """Energies (n + 1/2) sqrt(Omega) of the static Swanson model, both branches.

    The first entry is the principal square root; the second is its complex
    conjugate (identical to the first when Omega >= 0).
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    e = (n + 0.5) * cmath.sqrt(p.big_omega)
    if p.big_omega >= 0:
        e = complex(e.real, 0.0)
    return e, e.conjugate()
