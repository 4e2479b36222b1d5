"""
Coupling turn-off from the probe+coupling steady state, and the steady EIT lineshape.

The initial state keeps ρ_aa⁰ = 0, ρ_bb⁰ = 1 (first order in Ω₂).
"""

import logging
from typing import Union

import numpy as np

from eit.model.density import DensityMatrix
from eit.model.params import LambdaParams
from eit.model.units import angular


logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _check_equal_decay(params: LambdaParams, op: str) -> None:
    if not params.equal_decay:
        logger.warning(
            f"[module=analytic] [op={op}] Formula assumes gamma_ca = gamma_cb; "
            f"using the mean {params.gamma}"
        )


def _eit_denominator(h1, delta2, delta21, gam, g_ba):
    real = h1 ** 2 - delta2 * delta21 + g_ba * gam
    imag = delta21 * gam + delta2 * g_ba
    return real, imag


def turnoff_initial_coherence(params: LambdaParams) -> complex:
    """
    Steady ρ_bc under both fields, first order in Ω₂.

    ρ_bc⁰ = (Ω₂/2)(Δ₂₁ − iΓ_ba) / [(Ω₁²/4 − Δ₂Δ₂₁ + Γ_baΓ) + i(Δ₂₁Γ + Δ₂Γ_ba)]
    """
    _check_equal_decay(params, "turnoff_initial_coherence")
    ang = params.angular()
    real, imag = _eit_denominator(ang.h1, ang.d2, ang.d21, ang.gamma, ang.g_ba)
    return complex(ang.h2 * complex(ang.d21, -ang.g_ba) / complex(real, imag))


def turnoff_initial_state(params: LambdaParams) -> DensityMatrix:
    """All population in |b⟩ with the steady coherence `turnoff_initial_coherence`."""
    return DensityMatrix(aa=0.0, bb=1.0, cc=0.0, bc=turnoff_initial_coherence(params))


def turnoff_rho_bc(params: LambdaParams, t: ArrayLike) -> Union[complex, np.ndarray]:
    """
    ρ_bc(t) after the coupling is switched off at t = 0:
    free decay of ρ_bc⁰ plus the probe-driven build-up toward −i(Ω₂/2)/(Γ + iΔ₂).
    """
    ang = params.angular()
    t = np.asarray(t, dtype=float)
    rate = complex(ang.gamma, ang.d2)
    decay = np.exp(-rate * t)
    values = turnoff_initial_coherence(params) * decay - 1j * ang.h2 * (1.0 - decay) / rate
    return values if values.ndim else complex(values)


def turnoff_im_rbc(params: LambdaParams, t: ArrayLike) -> ArrayLike:
    """
    Im ρ_bc(t) after turn-off in real form: a build-up toward the probe-only
    value plus the decaying in-phase and quadrature parts of ρ_bc⁰.
    """
    _check_equal_decay(params, "turnoff_im_rbc")
    ang = params.angular()
    gam, g_ba, h1, h2 = ang.gamma, ang.g_ba, ang.h1, ang.h2
    d2, d21 = ang.d2, ang.d21
    t = np.asarray(t, dtype=float)

    real, imag = _eit_denominator(h1, d2, d21, gam, g_ba)
    den = real ** 2 + imag ** 2
    decay = np.exp(-gam * t)
    phase = d2 * t

    build_up = -h2 * gam / (gam ** 2 + d2 ** 2) * (
        1.0 - decay * (np.cos(phase) - (d2 / gam) * np.sin(phase))
    )
    in_phase = -h2 * decay * (gam * d21 ** 2 + g_ba * (gam * g_ba + h1 ** 2)) * np.cos(phase) / den
    quadrature = -h2 * decay * (d21 * h1 ** 2 - d2 * (d21 ** 2 + g_ba ** 2)) * np.sin(phase) / den

    values = build_up + in_phase + quadrature
    return values if values.ndim else float(values)


def steady_eit_lineshape(params: LambdaParams, delta2: ArrayLike = None) -> ArrayLike:
    """
    Steady Im ρ_bc under both fields, first order in Ω₂.

    Args:
        params: Field and atom parameters
        delta2: Optional probe detuning axis (MHz) overriding params.delta2
    """
    _check_equal_decay(params, "steady_eit_lineshape")
    d2 = np.asarray(params.delta2 if delta2 is None else delta2, dtype=float)
    h1 = params.omega1 / 2.0
    h2 = params.omega2 / 2.0
    gam, g_ba = params.gamma, params.gamma_ba
    d21 = d2 - params.delta1

    real, imag = _eit_denominator(h1, d2, d21, gam, g_ba)
    values = -h2 * (gam * d21 ** 2 + g_ba * (gam * g_ba + h1 ** 2)) / (real ** 2 + imag ** 2)
    return values if values.ndim else float(values)
