"""
Domain types shared by every module: parameters, states, schedules and units.
"""

from eit.model.density import DensityMatrix, StateInvariantError
from eit.model.dressed import dressed_state_positions
from eit.model.params import (
    AngularParams,
    BadFraction,
    LambdaParams,
    NegativeRate,
    equal_decay,
    validate,
)
from eit.model.schedule import FieldSchedule, SwitchMode, omega1_at, omega2_at
from eit.model.units import TWO_PI, angular, cyclic

__all__ = [
    "AngularParams",
    "BadFraction",
    "DensityMatrix",
    "FieldSchedule",
    "LambdaParams",
    "NegativeRate",
    "StateInvariantError",
    "SwitchMode",
    "TWO_PI",
    "angular",
    "cyclic",
    "dressed_state_positions",
    "equal_decay",
    "omega1_at",
    "omega2_at",
    "validate",
]
