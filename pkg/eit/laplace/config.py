"""
Configuration for the Laplace-domain engine.
"""

from dataclasses import dataclass


@dataclass
class LaplaceConfig:
    """
    Tolerances and sampling for rational-function construction.

    Attributes:
        trim_tol: Relative size below which trailing coefficients are dropped
        root_residual: Relative residual bound accepted for polynomial roots
        newton_steps: Newton polishing steps per root
        pole_separation: Relative separation below which poles count as degenerate
        origin_tol: Relative magnitude below which a root is taken to be p = 0
        sample_count: Points on the sampling circle for evaluation–interpolation
        radius_factor: Sampling radius as a multiple of the Gershgorin bound
        degree_bound: Largest numerator degree expected from the coherence system
        alias_tol: Relative size allowed for coefficients above the degree bound
        residual_tol: Relative residual of the coherence system at probe points
        probe_count: Random probe points for residual and reconstruction checks
        expansion_tol: Relative reconstruction error allowed for a pole expansion
        resample_attempts: Sampling attempts before a singular system is reported
        seed: Seed of the probe-point generator
    """

    trim_tol: float = 1e-12
    root_residual: float = 1e-8
    newton_steps: int = 3
    pole_separation: float = 1e-6
    origin_tol: float = 1e-9
    sample_count: int = 32
    radius_factor: float = 1.5
    degree_bound: int = 8
    alias_tol: float = 1e-8
    residual_tol: float = 1e-9
    probe_count: int = 20
    expansion_tol: float = 1e-8
    resample_attempts: int = 3
    seed: int = 20240607


# Default configuration instance
DEFAULT_CONFIG = LaplaceConfig()
