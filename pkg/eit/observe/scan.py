"""
(t, Δ₂) grids of transient probe response.

Rows are independent: each Δ₂ gets its own warmup and switch, so rows can
be evaluated in worker processes and are assembled by index.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm
from tqdm.contrib.concurrent import process_map

from eit.analytic.pumping import pump_intermediate
from eit.analytic.turnoff import turnoff_im_rbc
from eit.analytic.turnon import turnon_first_order
from eit.model.density import DensityMatrix
from eit.model.params import LambdaParams
from eit.model.schedule import FieldSchedule, SwitchMode
from eit.model.units import TWO_PI
from eit.observe.config import DEFAULT_CONFIG, ScanConfig
from eit.observe.transmission import transmission
from eit.ode.config import OdeConfig
from eit.ode.integrate import BadGrid, evolve, prepare_steady
from eit.shared.errors import UsageError


logger = logging.getLogger(__name__)


class EngineUnsupported(UsageError):
    """Raised when the analytic engine is requested outside its validity domain."""

    pass


class Engine(str, Enum):
    ODE = "ODE"
    ANALYTIC = "Analytic"


class Quantity(str, Enum):
    IM_RHO_BC = "ImRhoBC"
    TRANSMISSION = "Transmission"


@dataclass(frozen=True)
class ScanGrid:
    """
    Values on a (Δ₂, t) grid, one row per Δ₂ and one column per t.

    Attributes:
        delta2_axis: Strictly ascending probe detunings (MHz)
        time_axis: Strictly ascending times (μs)
        values: Matrix of shape (len(delta2_axis), len(time_axis))
        mode: Switching scenario
        quantity: Whether values are Im ρ_bc or T
    """

    delta2_axis: np.ndarray
    time_axis: np.ndarray
    values: np.ndarray
    mode: SwitchMode
    quantity: Quantity = Quantity.IM_RHO_BC

    def __post_init__(self) -> None:
        for name in ("delta2_axis", "time_axis"):
            axis = getattr(self, name)
            if axis.ndim != 1 or axis.size == 0 or np.any(np.diff(axis) <= 0.0):
                raise BadGrid(f"{name} must be a non-empty strictly ascending sequence")
        expected = (self.delta2_axis.size, self.time_axis.size)
        if self.values.shape != expected:
            raise BadGrid(f"values has shape {self.values.shape}, expected {expected}")

    def row(self, delta2: float) -> np.ndarray:
        """Row for the axis entry closest to delta2."""
        return self.values[int(np.argmin(np.abs(self.delta2_axis - delta2)))]

    def column(self, t: float) -> np.ndarray:
        """Column for the time-axis entry closest to t."""
        return self.values[:, int(np.argmin(np.abs(self.time_axis - t)))]


def _check_engine(params: LambdaParams, schedule: FieldSchedule, delta2_axis: np.ndarray) -> None:
    if schedule.mode is SwitchMode.TURN_OFF:
        return
    if schedule.mode is SwitchMode.TURN_ON:
        if params.delta1 != 0.0 or np.any(delta2_axis != 0.0):
            raise EngineUnsupported(
                "Analytic turn-on rows need delta1 = delta2 = 0; use engine ODE for detuned scans"
            )
        return
    raise EngineUnsupported(f"No analytic engine for mode {schedule.mode.value}")


def _warmup_for(params: LambdaParams, config: ScanConfig) -> float:
    if config.warmup is not None:
        return config.warmup
    return config.warmup_decay_times / (TWO_PI * params.gamma)


def _ode_row(params: LambdaParams, schedule: FieldSchedule, time_axis: np.ndarray, config: ScanConfig) -> np.ndarray:
    ode_config = OdeConfig(rel_tol=config.rel_tol, warmup_initial=tuple(config.warmup_initial))
    rho_switch = prepare_steady(params, schedule, _warmup_for(params, config), config=ode_config)
    starts_at_switch = time_axis[0] == schedule.switch_time
    grid = time_axis if starts_at_switch else np.concatenate([[schedule.switch_time], time_axis])
    trajectory = evolve(rho_switch, schedule, params, grid, config=ode_config)
    values = trajectory.im_rho_bc
    return values if starts_at_switch else values[1:]


def _analytic_row(
    params: LambdaParams, schedule: FieldSchedule, time_axis: np.ndarray, config: ScanConfig
) -> np.ndarray:
    elapsed = time_axis - schedule.switch_time
    if schedule.mode is SwitchMode.TURN_OFF:
        return np.asarray(turnoff_im_rbc(params, elapsed), dtype=float)
    # Probe-only plateau reached during the warmup
    aa0, bb0 = config.warmup_initial
    probe_only = params.model_copy(update={"omega1": 0.0})
    rho_bc, aa, bb = pump_intermediate(DensityMatrix.populations(aa0, bb0), probe_only)
    rho0 = DensityMatrix(aa=aa, bb=bb, cc=1.0 - aa - bb, bc=rho_bc)
    return np.asarray(turnon_first_order(rho0, params, elapsed), dtype=float)


def _scan_row(
    delta2: float,
    params: LambdaParams,
    schedule: FieldSchedule,
    time_axis: np.ndarray,
    engine: Engine,
    quantity: Quantity,
    config: ScanConfig,
) -> np.ndarray:
    row_params = params.model_copy(update={"delta2": float(delta2)})
    if engine is Engine.ODE:
        values = _ode_row(row_params, schedule, time_axis, config)
    else:
        values = _analytic_row(row_params, schedule, time_axis, config)
    if quantity is Quantity.TRANSMISSION:
        values = transmission(values, row_params)
    return np.atleast_1d(values)


def scan(
    params: LambdaParams,
    schedule: FieldSchedule,
    delta2_axis: Sequence[float],
    time_axis: Sequence[float],
    engine: Engine = Engine.ODE,
    quantity: Quantity = Quantity.IM_RHO_BC,
    config: Optional[ScanConfig] = None,
) -> ScanGrid:
    """
    Evaluate the transient response on a (Δ₂, t) grid.

    Each row prepares the pre-switch state by a warmup from config.warmup_initial
    and then follows the schedule; time_axis must start at or after the switch.

    Raises:
        EngineUnsupported: Analytic engine outside its validity domain
        BadGrid: axes not strictly ascending or times before the switch
    """
    config = config or DEFAULT_CONFIG
    engine = Engine(engine)
    quantity = Quantity(quantity)
    delta2_axis = np.asarray(delta2_axis, dtype=float)
    time_axis = np.asarray(time_axis, dtype=float)
    _log = f"[module=observe] [op=scan] [mode={schedule.mode.value}] [engine={engine.value}] "

    if time_axis.size and time_axis[0] < schedule.switch_time:
        raise BadGrid(f"time_axis starts at {time_axis[0]} μs, before the switch at {schedule.switch_time} μs")
    if engine is Engine.ANALYTIC:
        _check_engine(params, schedule, delta2_axis)

    row = partial(
        _scan_row,
        params=params,
        schedule=schedule,
        time_axis=time_axis,
        engine=engine,
        quantity=quantity,
        config=config,
    )
    logger.info(f"{_log}Scanning {delta2_axis.size} x {time_axis.size} grid | workers={config.workers}")
    if config.workers > 1:
        rows = process_map(
            row,
            list(delta2_axis),
            max_workers=config.workers,
            chunksize=1,
            desc="scan rows",
            disable=not config.show_progress,
        )
    else:
        rows = [row(d2) for d2 in tqdm(delta2_axis, desc="scan rows", disable=not config.show_progress)]

    return ScanGrid(
        delta2_axis=delta2_axis,
        time_axis=time_axis,
        values=np.vstack(rows),
        mode=schedule.mode,
        quantity=quantity,
    )


def rabi_peak_curves(
    omega1: float, n_max: int, time_axis: Sequence[float]
) -> List[Tuple[int, np.ndarray, np.ndarray]]:
    """
    Guide curves Δ₂ = Ω₁/2 ± n/t along which transient Rabi peaks line up.

    Returns:
        (n, upper branch, lower branch) for n = 1..n_max, each branch in MHz
    """
    if n_max < 1:
        raise UsageError(f"n_max must be >= 1, got {n_max}")
    t = np.asarray(time_axis, dtype=float)
    return [(n, omega1 / 2.0 + n / t, omega1 / 2.0 - n / t) for n in range(1, n_max + 1)]
