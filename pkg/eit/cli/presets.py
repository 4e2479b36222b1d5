"""
Figure-reproduction presets.

Each preset fixes the parameters printed in a figure caption plus the axes
used to draw it; flags and config files can still override any value.
"""

from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field


class Preset(BaseModel):
    """Named bundle of run values."""

    model_config = ConfigDict(frozen=True)

    name: str
    summary: str = Field(description="Caption citation shown in --help")
    values: Dict[str, Any] = Field(description="Run values keyed like config-file keys")


_FIG2_COMMON = {
    "omega1": 45.0,
    "omega2": 1.0,
    "gamma": 5.68,
    "gamma_ba": 3.4,
    "u": 0.0,
    "delta2_min": -50.0,
    "delta2_max": 50.0,
    "delta2_points": 201,
    "t_min": 0.0,
    "t_max": 0.4,
    "t_points": 400,
}

_EXPERIMENT_COMMON = {"omega2": 1.0, "gamma": 5.5, "gamma_ba": 3.3, "u": 0.2}

PRESETS: Dict[str, Preset] = {
    preset.name: preset
    for preset in (
        Preset(
            name="fig2a",
            summary="turn-on, resonant coupling, Ω₁=45, Ω₂=1, Γ=5.68, Γ_ba=3.4 MHz",
            values={**_FIG2_COMMON, "mode": "TurnOn", "delta1": 0.0},
        ),
        Preset(
            name="fig2b",
            summary="turn-on, coupling detuned Δ₁=−23 MHz",
            values={**_FIG2_COMMON, "mode": "TurnOn", "delta1": -23.0},
        ),
        Preset(
            name="fig2c",
            summary="turn-off, resonant coupling",
            values={**_FIG2_COMMON, "mode": "TurnOff", "delta1": 0.0},
        ),
        Preset(
            name="fig2d",
            summary="turn-off, coupling detuned Δ₁=−23 MHz",
            values={**_FIG2_COMMON, "mode": "TurnOff", "delta1": -23.0},
        ),
        Preset(
            name="fig4a",
            summary="steady spectrum, Ω₁=45 MHz on resonance, 20% uncoupled absorption",
            values={
                **_EXPERIMENT_COMMON,
                "mode": "Steady",
                "omega1": 45.0,
                "delta1": 0.0,
                "delta2_min": -60.0,
                "delta2_max": 60.0,
                "delta2_points": 2401,
            },
        ),
        Preset(
            name="fig4b",
            summary="steady spectrum, Ω₁=45 MHz, Δ₁=−23 MHz (major 14, minor −37 MHz)",
            values={
                **_EXPERIMENT_COMMON,
                "mode": "Steady",
                "omega1": 45.0,
                "delta1": -23.0,
                "delta2_min": -60.0,
                "delta2_max": 60.0,
                "delta2_points": 2401,
            },
        ),
        Preset(
            name="fig7b",
            summary="turn-off from Ω₁=46 MHz, Δ₂=−22 MHz dressed-state emptying with gain",
            values={
                "mode": "TurnOff",
                "omega1": 46.0,
                "omega2": 1.0,
                "delta1": 0.0,
                "delta2": -22.0,
                # Γ here is the natural half-width, half the 5.68 MHz total decay, with
                # Γ_ba = 0.6 Γ; at Γ = 5.5 the gain peak only reaches about 1.15
                "gamma": 2.84,
                "gamma_ba": 0.6 * 2.84,
                "u": 0.2,
                "t_min": 0.0,
                "t_max": 0.3,
                "t_points": 601,
            },
        ),
        Preset(
            name="fig9",
            summary="minor dressed state emptying, Ω₁=46, Δ₁=−23, Δ₂=−40 MHz; decay 5.5 MHz",
            values={
                **_EXPERIMENT_COMMON,
                "mode": "TurnOff",
                "omega1": 46.0,
                "delta1": -23.0,
                "delta2": -40.0,
                "t_min": 0.0,
                "t_max": 0.3,
                "t_points": 601,
            },
        ),
    )
}


def preset_help() -> str:
    return "; ".join(f"{p.name}: {p.summary}" for p in PRESETS.values())
