"""
Configuration for turn-off fits.
"""

from dataclasses import dataclass


@dataclass
class FitConfig:
    """
    Configuration for `fit_turnoff` and `envelope_decay`.

    Attributes:
        ftol: Relative decrease of the cost that ends the fit
        xtol: Relative step norm that ends the fit
        gtol: Gradient tolerance handed to MINPACK
        max_iterations: Iteration cap (converted to a function-evaluation cap)
        condition_limit: Column-scaled Jacobian condition number above which freed
            parameters count as collinear
        collinear_weight: Share of the weakest singular vector that marks a column collinear
        invalid_penalty: Residual returned when trial parameters are unphysical
        min_relative_extremum: Extrema smaller than this fraction of the largest are ignored
        min_extrema: Extrema needed for an envelope fit
    """

    ftol: float = 1e-10
    xtol: float = 1e-12
    gtol: float = 1e-15
    max_iterations: int = 500
    condition_limit: float = 1e8
    collinear_weight: float = 0.1
    invalid_penalty: float = 1e6
    min_relative_extremum: float = 1e-3
    min_extrema: int = 3


DEFAULT_FREE = ("delta2", "scale", "baseline", "t0")

# Default configuration instance
DEFAULT_CONFIG = FitConfig()
