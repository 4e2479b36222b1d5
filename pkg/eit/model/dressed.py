"""
Dressed-state geometry of the coupled |a⟩–|c⟩ transition.
"""

import math
from typing import Tuple


def dressed_state_positions(delta1: float, omega1: float) -> Tuple[float, float]:
    """
    Probe detunings of the two dressed absorption features.

    The features sit at Δ₂ = Δ₁/2 ± √(Ω₁² + Δ₁²)/2. The "major" feature is
    the branch closer to bare resonance Δ₂ = 0; on a tie (Δ₁ = 0) the
    positive branch is reported as major.

    Args:
        delta1: Coupling detuning Δ₁ (MHz)
        omega1: Coupling Rabi frequency Ω₁ (MHz), >= 0

    Returns:
        (major, minor) probe detunings in MHz
    """
    half_split = 0.5 * math.hypot(omega1, delta1)
    upper = 0.5 * delta1 + half_split
    lower = 0.5 * delta1 - half_split
    if abs(lower) < abs(upper):
        return lower, upper
    return upper, lower
