"""
Turn-off observables with nuisance scale, delay and baseline.
"""

from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from eit.analytic.turnoff import turnoff_im_rbc, turnoff_initial_coherence
from eit.model.params import LambdaParams
from eit.observe.transmission import transmission


ArrayLike = Union[float, np.ndarray]


class Nuisance(BaseModel):
    """Detector-side mapping applied to the model observable."""

    model_config = ConfigDict(frozen=True)

    scale: float = Field(default=1.0, description="Multiplier on the model observable")
    t0: float = Field(default=0.0, description="Switch instant on the trace clock (μs)")
    baseline: float = Field(default=0.0, description="Additive offset")


def _im_rbc_with_delay(params: LambdaParams, t0: float, t: ArrayLike) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    before = complex(turnoff_initial_coherence(params)).imag
    after = np.asarray(turnoff_im_rbc(params, np.maximum(t - t0, 0.0)), dtype=float)
    return np.where(t < t0, before, after)


def model_turnoff_im(params: LambdaParams, nuisance: Nuisance, t: ArrayLike) -> ArrayLike:
    """scale·Im ρ_bc(t − t0) + baseline, held at the pre-switch level for t < t0."""
    values = nuisance.scale * _im_rbc_with_delay(params, nuisance.t0, t) + nuisance.baseline
    return values if values.ndim else float(values)


def model_turnoff_T(params: LambdaParams, nuisance: Nuisance, t: ArrayLike) -> ArrayLike:
    """scale·T(t − t0) + baseline including the uncoupled background."""
    im_rho_bc = _im_rbc_with_delay(params, nuisance.t0, t)
    values = nuisance.scale * np.asarray(transmission(im_rho_bc, params)) + nuisance.baseline
    return values if values.ndim else float(values)
