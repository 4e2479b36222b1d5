"""
Direct numerical integration of the density-matrix equations of motion.
"""

from eit.ode.config import DEFAULT_CONFIG, OdeConfig
from eit.ode.equations import liouvillian, rhs, rhs_matrix
from eit.ode.integrate import (
    BadGrid,
    InvariantBreach,
    SteadyStateUndefined,
    StepFailure,
    Trajectory,
    evolve,
    prepare_steady,
    steady_state,
)
from eit.ode.io import TRAJECTORY_HEADER, write_trajectory_csv

__all__ = [
    "DEFAULT_CONFIG",
    "OdeConfig",
    "liouvillian",
    "rhs",
    "rhs_matrix",
    "BadGrid",
    "InvariantBreach",
    "SteadyStateUndefined",
    "StepFailure",
    "Trajectory",
    "evolve",
    "prepare_steady",
    "steady_state",
    "TRAJECTORY_HEADER",
    "write_trajectory_csv",
]
