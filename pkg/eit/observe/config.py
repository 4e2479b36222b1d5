"""
Configuration for scan grids.
"""

from dataclasses import dataclass
from typing import Optional


@dataclass
class ScanConfig:
    """
    Configuration for `scan`.

    Attributes:
        workers: Processes evaluating rows (1 = in-process)
        warmup: Pre-switch warmup (μs); None means warmup_decay_times/Γ
        warmup_decay_times: Warmup length in mean decay times when warmup is None
        warmup_initial: (ρ_aa, ρ_bb) at the start of the warmup
        rel_tol: Integrator tolerance for ODE rows
        show_progress: Display a tqdm bar over rows
    """

    workers: int = 1
    warmup: Optional[float] = None
    warmup_decay_times: float = 10.0
    warmup_initial: tuple = (0.05, 0.95)
    rel_tol: float = 1e-8
    show_progress: bool = True


# Default configuration instance
DEFAULT_CONFIG = ScanConfig()
