"""
Configuration for the density-matrix integrator.
"""

from dataclasses import dataclass


@dataclass
class OdeConfig:
    """
    Configuration for `evolve` and `prepare_steady`.

    Attributes:
        rel_tol: Default relative local-error tolerance per step
        atol_ratio: Absolute tolerance as a fraction of rel_tol
        method: scipy embedded Runge–Kutta pair
        trace_breach: Trace drift that signals an implementation bug
        positivity_floor: Smallest eigenvalue tolerated along a trajectory
        warmup_initial: (ρ_aa, ρ_bb) at the start of a warmup
    """

    rel_tol: float = 1e-9
    atol_ratio: float = 1e-2
    method: str = "DOP853"
    trace_breach: float = 1e-6
    positivity_floor: float = -1e-7
    warmup_initial: tuple = (0.05, 0.95)


# Default configuration instance
DEFAULT_CONFIG = OdeConfig()
