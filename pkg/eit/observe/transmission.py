"""
Detected probe transmission and steady-state spectra.

T is scaled so that the bare resonant two-level absorption reads 0 and no
absorption reads 1; the uncoupled ensemble adds a static Lorentzian of
weight u.
"""

import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.signal import find_peaks

from eit.analytic.turnoff import steady_eit_lineshape
from eit.model.dressed import dressed_state_positions
from eit.model.params import LambdaParams
from eit.shared.errors import UsageError


logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def uncoupled_absorption(params: LambdaParams, delta2: Optional[ArrayLike] = None) -> ArrayLike:
    """Bare two-level −Im ρ_bc = (Ω₂/2)Γ/(Γ² + Δ₂²) of atoms the coupling field misses."""
    d2 = np.asarray(params.delta2 if delta2 is None else delta2, dtype=float)
    gam = params.gamma
    return (params.omega2 / 2.0) * gam / (gam ** 2 + d2 ** 2)


def transmission(
    im_rho_bc: ArrayLike, params: LambdaParams, delta2: Optional[ArrayLike] = None
) -> ArrayLike:
    """
    Scaled transmission T for a coupled-atom Im ρ_bc.

    T = 1 − [(1−u)(−Im ρ_bc) + u·(Ω₂/2)Γ/(Γ²+Δ₂²)] / [(Ω₂/2)/Γ]

    Args:
        im_rho_bc: Im ρ_bc of the coupled atoms (scalar or array)
        params: Parameters providing Ω₂, Γ, u and the default Δ₂
        delta2: Optional Δ₂ (MHz) broadcast against im_rho_bc

    Raises:
        UsageError: Ω₂ = 0 leaves the normalization undefined
    """
    if params.omega2 <= 0.0:
        raise UsageError("transmission needs a probe field (omega2 > 0)")
    u = params.uncoupled_fraction
    full_scale = (params.omega2 / 2.0) / params.gamma
    absorbed = (1.0 - u) * (-np.asarray(im_rho_bc, dtype=float)) + u * uncoupled_absorption(params, delta2)
    values = 1.0 - absorbed / full_scale
    return values if np.ndim(values) else float(values)


def spectrum(params: LambdaParams, delta2_axis: Sequence[float]) -> np.ndarray:
    """
    Steady-state transmission spectrum with the uncoupled background.

    Returns:
        Array of shape (n, 2) with columns (Δ₂ MHz, T)
    """
    axis = np.asarray(delta2_axis, dtype=float)
    im_rho_bc = steady_eit_lineshape(params, axis)
    return np.column_stack([axis, transmission(im_rho_bc, params, axis)])


def absorption_minima(spectrum_table: np.ndarray) -> np.ndarray:
    """Δ₂ positions of the local transmission minima, deepest first."""
    axis, values = spectrum_table[:, 0], spectrum_table[:, 1]
    peaks, _ = find_peaks(-values)
    order = np.argsort(values[peaks])
    return axis[peaks[order]]


def dressed_ridges(params: LambdaParams) -> Tuple[float, float]:
    """(major, minor) Δ₂ lines along which dressed-state features appear."""
    return dressed_state_positions(params.delta1, params.omega1)
