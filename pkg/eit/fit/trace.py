"""
Measured or synthetic transmission traces.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from eit.fit.model import Nuisance, model_turnoff_T
from eit.model.params import LambdaParams
from eit.shared.errors import UsageError


logger = logging.getLogger(__name__)

TRACE_HEADER = "t_us,transmission"
MIN_TRACE_LENGTH = 8


class BadTrace(UsageError):
    """Raised for traces that are too short, unsorted or malformed."""

    pass


@dataclass(frozen=True)
class Trace:
    """Transmission samples on a strictly ascending time axis (μs)."""

    times: np.ndarray
    transmissions: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "times", np.asarray(self.times, dtype=float))
        object.__setattr__(self, "transmissions", np.asarray(self.transmissions, dtype=float))
        if self.times.shape != self.transmissions.shape or self.times.ndim != 1:
            raise BadTrace("times and transmissions must be 1-D sequences of equal length")
        if self.times.size < MIN_TRACE_LENGTH:
            raise BadTrace(f"Trace needs at least {MIN_TRACE_LENGTH} samples, got {self.times.size}")
        if np.any(np.diff(self.times) <= 0.0):
            raise BadTrace("Trace times must be strictly ascending")

    def __len__(self) -> int:
        return self.times.size


def synthetic_trace(
    params: LambdaParams,
    nuisance: Nuisance,
    times: Sequence[float],
    noise: float = 0.0,
    seed: int = 0,
) -> Trace:
    """Model turn-off trace plus additive white Gaussian noise of standard deviation `noise`."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(model_turnoff_T(params, nuisance, times), dtype=float)
    if noise > 0.0:
        values = values + np.random.default_rng(seed).normal(0.0, noise, size=times.size)
    return Trace(times=times, transmissions=values)


def read_trace_csv(path: Union[str, Path]) -> Trace:
    """Read a `t_us,transmission` CSV."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip()
    if header != TRACE_HEADER:
        raise BadTrace(f"{path}: expected header '{TRACE_HEADER}', got '{header}'")
    try:
        table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as e:
        raise BadTrace(f"{path}: {e}") from e
    if table.shape[1] != 2:
        raise BadTrace(f"{path}: expected 2 columns, got {table.shape[1]}")
    return Trace(times=table[:, 0], transmissions=table[:, 1])


def write_trace_csv(trace: Trace, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(
        path,
        np.column_stack([trace.times, trace.transmissions]),
        delimiter=",",
        header=TRACE_HEADER,
        comments="",
        fmt="%.17g",
    )
    return path
