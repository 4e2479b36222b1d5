"""
Resonant turn-on of the coupling field, first order in the probe.

Time arguments are in μs and may be arrays; every rate is converted to
rad/μs before it meets t.
"""

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from eit.laplace.polynomial import ComplexPolynomial
from eit.laplace.rational import RationalFunction, invert, partial_fractions
from eit.model.density import DensityMatrix
from eit.model.params import LambdaParams
from eit.model.units import angular


logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Below this Ω₁/Γ the Φ decomposition is only qualitative
PHI_VALID_RATIO = 2.0


@dataclass(frozen=True)
class PhiDecomposition:
    """Contributions of the pole pairs (1,2), (3) and (4,5) to Im ρ_bc."""

    phi12: ArrayLike
    phi3: ArrayLike
    phi45: ArrayLike

    @property
    def total(self) -> ArrayLike:
        return self.phi12 + self.phi3 + self.phi45


def _warn_if_detuned(params: LambdaParams, op: str) -> None:
    if params.delta1 != 0.0 or params.delta2 != 0.0:
        logger.warning(
            f"[module=analytic] [op={op}] Closed form assumes delta1 = delta2 = 0 "
            f"(got {params.delta1}, {params.delta2})"
        )


def _damped_nutation(rate: float, freq_sq: float, t: np.ndarray):
    """
    (cos(f t/2), sin(f t/2)/f) for f = √freq_sq, continued to the
    hyperbolic branch for freq_sq < 0 and to (1, t/2) at freq_sq = 0.
    """
    if freq_sq > 0.0:
        f = np.sqrt(freq_sq)
        return np.cos(f * t / 2.0), np.sin(f * t / 2.0) / f
    if freq_sq < 0.0:
        k = np.sqrt(-freq_sq)
        return np.cosh(k * t / 2.0), np.sinh(k * t / 2.0) / k
    return np.ones_like(t), t / 2.0


def turnon_nutation(rho_bc0: complex, params: LambdaParams, t: ArrayLike) -> ArrayLike:
    """
    Damped Rabi nutation of the initial coherence after resonant turn-on.

    Im ρ_bc(t) = Im ρ_bc⁰ e^{−(Γ+Γ_ba)t/2}[cos(f′t/2) − (Γ−Γ_ba)/f′ sin(f′t/2)],
    f′ = √(Ω₁² − (Γ−Γ_ba)²). Reduces to plain damped nutation at Γ_ba = 0.
    """
    _warn_if_detuned(params, "turnon_nutation")
    t = np.asarray(t, dtype=float)
    gam = angular(params.gamma)
    g_ba = angular(params.gamma_ba)
    omega1 = angular(params.omega1)
    cos_term, sin_over_f = _damped_nutation(gam + g_ba, omega1 ** 2 - (gam - g_ba) ** 2, t)
    envelope = np.exp(-(gam + g_ba) * t / 2.0)
    result = complex(rho_bc0).imag * envelope * (cos_term - (gam - g_ba) * sin_over_f)
    return result if result.ndim else float(result)


def turnon_phi(
    rho0: DensityMatrix, params: LambdaParams, t: ArrayLike, dephasing: bool = False
) -> PhiDecomposition:
    """
    Strong-coupling approximation Im ρ_bc = Φ₁₂ + Φ₃ + Φ₄₅ after resonant turn-on.

    Args:
        rho0: State at the switch (populations and ρ_bc⁰)
        params: Field and atom parameters (Δ₁ = Δ₂ = 0)
        t: Time(s) after the switch (μs)
        dephasing: Use the forms generalized to Γ_ba > 0
    """
    _warn_if_detuned(params, "turnon_phi")
    if params.omega1 < PHI_VALID_RATIO * params.gamma:
        logger.warning(
            f"[module=analytic] [op=turnon_phi] omega1/gamma = {params.omega1 / params.gamma:.2f} "
            f"is below {PHI_VALID_RATIO}; decomposition is only qualitative"
        )
    t = np.asarray(t, dtype=float)
    gam = angular(params.gamma)
    om1 = angular(params.omega1)
    om2 = angular(params.omega2)
    im0 = complex(rho0.bc).imag
    aa0, bb0 = rho0.aa, rho0.bb

    if dephasing:
        g_ba = angular(params.gamma_ba)
        decay12 = np.exp(-(gam + g_ba) * t / 2.0)
        phi12 = decay12 * (
            (im0 + (om2 * g_ba / 3.0) * (5.0 * bb0 + aa0 - 2.0) / om1 ** 2) * np.cos(om1 * t / 2.0)
            - (om2 / om1) * (im0 * (gam - g_ba) / om2 - (aa0 - bb0)) * np.sin(om1 * t / 2.0)
        )
        phi3 = -2.0 * (om2 / om1 ** 2) * (
            g_ba + 0.375 * (1.0 - bb0) * (gam - 4.0 * g_ba) * np.exp(-gam * t / 2.0)
        )
        phi45 = (om2 / om1) * np.exp(-1.25 * gam * t) * (
            (0.75 * gam * (1.0 - bb0) / om1 + (g_ba / 3.0) * (1.0 - 2.0 * aa0 - bb0) / om1)
            * np.cos(om1 * t)
            + 0.5 * (1.0 - 2.0 * aa0 - bb0) * np.sin(om1 * t)
        )
    else:
        weight = 12.0 * (1.0 - bb0) / (9.0 + (4.0 * om1 / gam) ** 2)
        phi12 = np.exp(-gam * t / 2.0) * (
            im0 * np.cos(om1 * t / 2.0)
            + (gam / om1) * ((aa0 - bb0) * om2 / gam - im0) * np.sin(om1 * t / 2.0)
        )
        phi3 = -(om2 / gam) * weight * np.exp(-gam * t / 2.0)
        phi45 = (om2 / gam) * np.exp(-1.25 * gam * t) * (
            weight * np.cos(om1 * t)
            + 0.5 * (1.0 - bb0 - 2.0 * aa0) * (gam / om1) * np.sin(om1 * t)
        )

    if t.ndim == 0:
        return PhiDecomposition(float(phi12), float(phi3), float(phi45))
    return PhiDecomposition(phi12, phi3, phi45)


def turnon_first_order_transform(rho0: DensityMatrix, params: LambdaParams) -> RationalFunction:
    """
    Laplace transform of Im ρ_bc after resonant turn-on, first order in Ω₂ and
    all orders in Ω₁ (Γ_ba = 0, Δ₁ = Δ₂ = 0), in rad/μs.
    """
    _warn_if_detuned(params, "turnon_first_order_transform")
    ang = params.angular()
    gam, h1, h2 = ang.g_ca, ang.h1, ang.h2
    aa0, bb0 = rho0.aa, rho0.bb
    im0 = complex(rho0.bc).imag

    p = ComplexPolynomial.p(scale=max(2.0 * gam, 2.0 * h1))
    nutation = p * p + gam * p + h1 * h1
    cubic = p * (p + gam) * (p + 2.0 * gam) + 2.0 * h1 * h1 * (2.0 * p + gam)

    coherent = RationalFunction(im0 * p + (aa0 - bb0) * h2, nutation)
    population = RationalFunction(
        -h2 * (gam * aa0 + (bb0 - 1.0) * (p - gam) + 2.0 * aa0 * p), cubic
    )
    return coherent + population


def turnon_first_order(rho0: DensityMatrix, params: LambdaParams, t: ArrayLike) -> ArrayLike:
    """Exact residue inversion of `turnon_first_order_transform`."""
    expansion = partial_fractions(turnon_first_order_transform(rho0, params))
    values = invert(expansion, t)
    return np.real(values) if np.ndim(values) else float(np.real(values))
