"""
Run configuration: `key = value` files, presets and flag overrides.

Resolution order, later wins: built-in defaults, preset, config file, flags.
"""

import io
import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from dotenv.parser import parse_stream
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from eit.cli.presets import PRESETS
from eit.graph.samples import COMPARE_GAMMA
from eit.model.params import LambdaParams
from eit.model.schedule import FieldSchedule, SwitchMode
from eit.observe.scan import Engine
from eit.shared.errors import UsageError


logger = logging.getLogger(__name__)


class ParseError(UsageError):
    """Raised for malformed or unknown config-file lines; carries the 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        self.line = line
        self.path = path
        location = f"{path or '<config>'}:{line}: " if line is not None else ""
        super().__init__(f"{location}{message}")


FLOAT_KEYS = (
    "omega1", "omega2", "delta1", "delta2", "gamma", "gamma_ca", "gamma_cb", "gamma_ba", "u",
    "uncoupled_fraction", "omega1_on",
    "switch_time", "rho_aa", "rho_bb", "delta2_min", "delta2_max", "t_min", "t_max", "noise", "rel_tol",
)
INT_KEYS = ("delta2_points", "t_points", "seed", "workers", "samples")
STR_KEYS = ("mode", "engine", "out_dir", "preset")
KNOWN_KEYS = FLOAT_KEYS + INT_KEYS + STR_KEYS

# Record field names accepted in place of the short run keys
FIELD_ALIASES = {"uncoupled_fraction": "u", "omega1_on": "omega1"}
GAMMA_KEYS = ("gamma", "gamma_ca", "gamma_cb")

# vector3 is decay-free and compare only uses Γ as the scale of its random
# samples, so both may run without a decay rate
GAMMA_FREE_COMMANDS = ("vector3", "compare")

DEFAULTS: Dict[str, Any] = {
    "omega1": 45.0,
    "omega2": 1.0,
    "delta1": 0.0,
    "delta2": 0.0,
    "gamma_ba": 0.0,
    "u": 0.2,
    "mode": "TurnOff",
    "switch_time": 0.0,
    "rho_aa": 0.5,
    "rho_bb": 0.5,
    "engine": "ODE",
    "delta2_min": -50.0,
    "delta2_max": 50.0,
    "delta2_points": 101,
    "t_min": 0.0,
    "t_max": 0.5,
    "t_points": 501,
    "noise": 0.01,
    "rel_tol": 1e-9,
    "seed": 7,
    "workers": 1,
    "samples": 10,
    "out_dir": "out",
}


class RunSpec(BaseModel):
    """Everything a subcommand needs, fully resolved."""

    model_config = ConfigDict(frozen=True)

    command: str = Field(description="Subcommand name")
    params: LambdaParams = Field(description="Atom and field parameters")
    schedule: FieldSchedule = Field(description="Coupling switching schedule")
    engine: Engine = Field(default=Engine.ODE, description="Engine for traces and scans")
    delta2_axis: Tuple[float, float, int] = Field(description="(min, max, points) of the Δ₂ axis (MHz)")
    time_axis: Tuple[float, float, int] = Field(description="(min, max, points) of the time axis (μs)")
    out_dir: Path = Field(description="Directory receiving every output file")
    seed: int = Field(default=7, description="Seed for synthetic noise and parameter sampling")
    noise: float = Field(default=0.01, ge=0.0, description="Synthetic-trace noise (T units)")
    rel_tol: float = Field(default=1e-9, description="Integrator tolerance")
    workers: int = Field(default=1, ge=1, description="Processes for scan rows")
    samples: int = Field(default=10, ge=1, description="Parameter sets for compare")
    initial_populations: Tuple[float, float] = Field(
        default=(0.5, 0.5), description="(ρ_aa, ρ_bb) at the start of a pump run"
    )
    preset: Optional[str] = Field(default=None, description="Preset the values started from")
    resolved: Dict[str, Any] = Field(default_factory=dict, description="Merged key/value view for run.meta")

    @model_validator(mode="after")
    def _check_axes(self) -> "RunSpec":
        for name in ("delta2_axis", "time_axis"):
            low, high, points = getattr(self, name)
            if points < 1:
                raise ValueError(f"{name} needs at least one point")
            if points > 1 and not high > low:
                raise ValueError(f"{name} must have max > min, got ({low}, {high})")
        return self


def _convert(key: str, raw: str, line: Optional[int], path: Optional[str]) -> Any:
    try:
        if key in FLOAT_KEYS:
            return float(raw)
        if key in INT_KEYS:
            return int(raw)
    except ValueError:
        raise ParseError(f"value '{raw}' for '{key}' is not a number", line, path) from None
    return raw


def parse_config_text(text: str, path: Optional[str] = None) -> Dict[str, Any]:
    """
    Parse `key = value` lines (`#` comments allowed) into typed values.

    Raises:
        ParseError: malformed line, missing value or unknown key
    """
    values: Dict[str, Any] = {}
    for binding in parse_stream(io.StringIO(text)):
        line = binding.original.line
        if binding.error:
            raise ParseError(f"cannot parse '{binding.original.string.strip()}'", line, path)
        if binding.key is None:
            continue
        if binding.value is None:
            raise ParseError(f"'{binding.key}' has no value", line, path)
        if binding.key not in KNOWN_KEYS:
            raise ParseError(f"unknown key '{binding.key}'", line, path)
        key = FIELD_ALIASES.get(binding.key, binding.key)
        values[key] = _convert(binding.key, binding.value, line, path)
    return values


def parse_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"config file not found: {path}")
    return parse_config_text(path.read_text(encoding="utf-8"), str(path))


def _merge(file_values: Mapping[str, Any], overrides: Mapping[str, Any], command: str) -> Dict[str, Any]:
    flags = {FIELD_ALIASES.get(k, k): v for k, v in overrides.items() if v is not None}
    preset_name = flags.get("preset") or file_values.get("preset")
    merged: Dict[str, Any] = dict(DEFAULTS)
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise UsageError(f"unknown preset '{preset_name}'; choose from {sorted(PRESETS)}")
        merged.update(PRESETS[preset_name].values)
    merged.update(file_values)
    merged.update(flags)
    merged["preset"] = preset_name

    if not any(key in merged for key in GAMMA_KEYS):
        if command not in GAMMA_FREE_COMMANDS:
            raise UsageError(
                "no decay rate given: set --gamma (or gamma_ca and gamma_cb) or pick a preset; "
                "no default decay rate is assumed"
            )
        merged["gamma"] = COMPARE_GAMMA
        logger.info(f"[module=cli] [op=load_config] {command} does not read gamma; sampling scale {COMPARE_GAMMA} MHz")

    # A plain gamma sets both decay channels unless they are given separately
    for channel in ("gamma_ca", "gamma_cb"):
        if channel not in merged:
            if "gamma" not in merged:
                raise UsageError(f"{channel} missing: give both decay channels or a single gamma")
            merged[channel] = merged["gamma"]
    return merged


def resolve(command: str, values: Mapping[str, Any]) -> RunSpec:
    """Build a RunSpec from merged values."""
    try:
        params = LambdaParams(
            omega1=values["omega1"],
            omega2=values["omega2"],
            delta1=values["delta1"],
            delta2=values["delta2"],
            gamma_ca=values["gamma_ca"],
            gamma_cb=values["gamma_cb"],
            gamma_ba=values["gamma_ba"],
            uncoupled_fraction=values["u"],
        )
        schedule = FieldSchedule.for_params(
            SwitchMode(values["mode"]), params, switch_time=values["switch_time"]
        )
        return RunSpec(
            command=command,
            params=params,
            schedule=schedule,
            engine=Engine(values["engine"]),
            delta2_axis=(values["delta2_min"], values["delta2_max"], values["delta2_points"]),
            time_axis=(values["t_min"], values["t_max"], values["t_points"]),
            out_dir=Path(values["out_dir"]),
            seed=values["seed"],
            noise=values["noise"],
            rel_tol=values["rel_tol"],
            workers=values["workers"],
            samples=values["samples"],
            initial_populations=(values["rho_aa"], values["rho_bb"]),
            preset=values.get("preset"),
            resolved={k: v for k, v in values.items() if v is not None},
        )
    except ValidationError as e:
        raise UsageError(f"invalid run configuration: {e.errors()[0]['msg']}") from e
    except ValueError as e:
        raise UsageError(f"invalid run configuration: {e}") from e


def load_config(
    path: Optional[Union[str, Path]], overrides: Optional[Mapping[str, Any]] = None, command: str = "run"
) -> RunSpec:
    """
    Merge defaults, preset, config file and flag overrides into a RunSpec.

    Args:
        path: Config file, or None for flags only
        overrides: Flag values; None entries are ignored
        command: Subcommand this RunSpec describes

    Raises:
        ParseError: malformed config file
        UsageError: unknown preset or invalid values
    """
    file_values = parse_config_file(path) if path is not None else {}
    spec = resolve(command, _merge(file_values, overrides or {}, command))
    logger.debug(f"[module=cli] [op=load_config] Resolved {command} | preset={spec.preset}, out_dir={spec.out_dir}")
    return spec


def ensure_out_dir(spec: RunSpec) -> Path:
    """Create the output directory and check it is writable."""
    try:
        spec.out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise UsageError(f"cannot create output directory {spec.out_dir}: {e}") from e
    if not os.access(spec.out_dir, os.W_OK):
        raise UsageError(f"output directory {spec.out_dir} is not writable")
    return spec.out_dir
