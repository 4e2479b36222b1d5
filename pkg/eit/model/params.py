"""
Λ-system parameter record and validation.
"""

import logging
import math
from typing import Any, Mapping, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from eit.model.units import angular
from eit.shared.errors import UsageError


logger = logging.getLogger(__name__)


class NegativeRate(UsageError):
    """Raised when a rate or Rabi frequency is negative (or a decay rate is not positive)."""

    pass


class BadFraction(UsageError):
    """Raised when the uncoupled fraction lies outside [0, 1]."""

    pass


class LambdaParams(BaseModel):
    """
    Full parameter record of the Λ atom and its two fields.

    All frequencies are cyclic MHz. The two-photon detuning is derived,
    never stored.
    """

    model_config = ConfigDict(frozen=True)

    omega1: float = Field(default=0.0, description="Coupling Rabi frequency Ω₁ (MHz)")
    omega2: float = Field(default=0.0, description="Probe Rabi frequency Ω₂ (MHz)")
    delta1: float = Field(default=0.0, description="Coupling detuning Δ₁ (MHz)")
    delta2: float = Field(default=0.0, description="Probe detuning Δ₂ (MHz)")
    gamma_ca: float = Field(description="Decay rate of |c⟩ into |a⟩ (MHz)")
    gamma_cb: float = Field(description="Decay rate of |c⟩ into |b⟩ (MHz)")
    gamma_ba: float = Field(default=0.0, description="Two-photon dephasing rate Γ_ba (MHz)")
    uncoupled_fraction: float = Field(
        default=0.2, description="Fraction u of uncoupled Lorentzian absorption"
    )

    @model_validator(mode="after")
    def _check_invariants(self) -> "LambdaParams":
        # Not ValueError subclasses, so pydantic lets them propagate unchanged
        for name in ("omega1", "omega2", "gamma_ba"):
            value = getattr(self, name)
            if not value >= 0.0 or not math.isfinite(value):
                raise NegativeRate(f"{name} must be a finite value >= 0, got {value}")
        for name in ("gamma_ca", "gamma_cb"):
            value = getattr(self, name)
            if not value > 0.0 or not math.isfinite(value):
                raise NegativeRate(f"{name} must be a finite value > 0, got {value}")
        for name in ("delta1", "delta2"):
            if not math.isfinite(getattr(self, name)):
                raise NegativeRate(f"{name} must be finite, got {getattr(self, name)}")
        u = self.uncoupled_fraction
        if not 0.0 <= u <= 1.0:
            raise BadFraction(f"uncoupled_fraction must lie in [0, 1], got {u}")
        return self

    @property
    def delta21(self) -> float:
        """Two-photon detuning Δ₂₁ = Δ₂ − Δ₁ (MHz)."""
        return self.delta2 - self.delta1

    @property
    def gamma(self) -> float:
        """Mean decay rate (Γ_ca + Γ_cb)/2, equal to Γ in the equal-decay case."""
        return 0.5 * (self.gamma_ca + self.gamma_cb)

    @property
    def equal_decay(self) -> bool:
        """True when Γ_ca = Γ_cb."""
        return math.isclose(self.gamma_ca, self.gamma_cb, rel_tol=1e-12, abs_tol=0.0)

    def angular(self) -> "AngularParams":
        """Return the same record in internal angular units (rad/μs)."""
        return AngularParams(
            h1=angular(self.omega1) / 2.0,
            h2=angular(self.omega2) / 2.0,
            d1=angular(self.delta1),
            d2=angular(self.delta2),
            g_ca=angular(self.gamma_ca),
            g_cb=angular(self.gamma_cb),
            g_ba=angular(self.gamma_ba),
        )


class AngularParams(BaseModel):
    """Half Rabi frequencies, detunings and rates in rad/μs."""

    model_config = ConfigDict(frozen=True)

    h1: float
    h2: float
    d1: float
    d2: float
    g_ca: float
    g_cb: float
    g_ba: float

    @property
    def d21(self) -> float:
        return self.d2 - self.d1

    @property
    def g_total(self) -> float:
        return self.g_ca + self.g_cb

    @property
    def gamma(self) -> float:
        return 0.5 * (self.g_ca + self.g_cb)


def validate(params: Union[LambdaParams, Mapping[str, Any]]) -> LambdaParams:
    """
    Validate raw numeric inputs into a LambdaParams record.

    Idempotent: a validated record is re-checked and returned unchanged.

    Raises:
        NegativeRate: any rate or Rabi frequency out of range
        BadFraction: uncoupled fraction outside [0, 1]
    """
    raw = params.model_dump() if isinstance(params, LambdaParams) else dict(params)
    validated = LambdaParams(**raw)
    logger.debug(f"[module=model] [op=validate] Validated params: {validated.model_dump()}")
    return validated


def equal_decay(
    omega1: float = 0.0,
    omega2: float = 0.0,
    delta1: float = 0.0,
    delta2: float = 0.0,
    gamma: float = 5.5,
    gamma_ba: float = 0.0,
    uncoupled_fraction: float = 0.2,
) -> LambdaParams:
    """Build a record with Γ_ca = Γ_cb = Γ."""
    return LambdaParams(
        omega1=omega1,
        omega2=omega2,
        delta1=delta1,
        delta2=delta2,
        gamma_ca=gamma,
        gamma_cb=gamma,
        gamma_ba=gamma_ba,
        uncoupled_fraction=uncoupled_fraction,
    )
