"""
Field switching schedules.

Ω₁(t) is piecewise constant with a single right-continuous step at
`switch_time`; the switch instant belongs to the post-switch epoch.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from eit.model.params import LambdaParams


class SwitchMode(str, Enum):
    """Which field changes at the switch instant."""

    TURN_ON = "TurnOn"
    TURN_OFF = "TurnOff"
    BOTH_ON = "BothOn"
    STEADY = "Steady"


class FieldSchedule(BaseModel):
    """Idealized instantaneous switching of the coupling field."""

    model_config = ConfigDict(frozen=True)

    mode: SwitchMode = Field(description="Switching scenario")
    switch_time: float = Field(default=0.0, description="Switch instant (μs)")
    omega1_on: float = Field(ge=0.0, description="Coupling Rabi frequency when active (MHz)")

    @classmethod
    def for_params(
        cls, mode: SwitchMode, params: LambdaParams, switch_time: float = 0.0
    ) -> "FieldSchedule":
        """Schedule whose active coupling strength is `params.omega1`."""
        return cls(mode=SwitchMode(mode), switch_time=switch_time, omega1_on=params.omega1)


def omega1_at(schedule: FieldSchedule, t: float) -> float:
    """Coupling Rabi frequency (MHz) in effect at time t (μs)."""
    after = t >= schedule.switch_time
    if schedule.mode is SwitchMode.STEADY:
        return schedule.omega1_on
    if schedule.mode is SwitchMode.TURN_OFF:
        return 0.0 if after else schedule.omega1_on
    # TurnOn and BothOn
    return schedule.omega1_on if after else 0.0


def omega2_at(schedule: FieldSchedule, params: LambdaParams, t: float) -> float:
    """Probe Rabi frequency (MHz) in effect at time t; only BothOn gates the probe."""
    if schedule.mode is SwitchMode.BOTH_ON and t < schedule.switch_time:
        return 0.0
    return params.omega2
