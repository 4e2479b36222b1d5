"""
Random parameter sets for cross-engine comparison.
"""

from typing import List

import numpy as np

from eit.model.params import LambdaParams, equal_decay
from eit.model.units import TWO_PI


COMPARE_GAMMA = 5.68
PROBE_RATIO = 0.02
TURNON_POPULATIONS = (0.2, 0.8)


def draw_samples(count: int, seed: int, gamma: float = COMPARE_GAMMA) -> List[LambdaParams]:
    """
    Equal-decay parameter sets with Ω₁/Γ in [2, 10], Ω₂ = 0.02Γ,
    |Δ₁|, |Δ₂| ≤ 2Ω₁ and Γ_ba in [0, 0.6Γ].
    """
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(count):
        omega1 = gamma * rng.uniform(2.0, 10.0)
        samples.append(
            equal_decay(
                omega1=omega1,
                omega2=PROBE_RATIO * gamma,
                delta1=rng.uniform(-2.0, 2.0) * omega1,
                delta2=rng.uniform(-2.0, 2.0) * omega1,
                gamma=gamma,
                gamma_ba=rng.uniform(0.0, 0.6) * gamma,
            )
        )
    return samples


def time_grid(params: LambdaParams, points: int, decay_times: float) -> np.ndarray:
    """`points` samples over `decay_times` mean decay times after the switch (μs)."""
    return np.linspace(0.0, decay_times / (TWO_PI * params.gamma), points)


def turnoff_tolerance(params: LambdaParams) -> float:
    """Second-order-in-probe slack 10·(Ω₂/Γ)²·(Ω₂/2Γ) on first-order turn-off formulas."""
    ratio = params.omega2 / params.gamma
    return 10.0 * ratio ** 2 * (ratio / 2.0)
