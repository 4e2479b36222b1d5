"""
Adaptive integration of the equations of motion across a field switch.

Integration is split exactly at the switch instant so the step in Ω₁(t)
is never straddled by a Runge–Kutta step.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from eit.model.density import DensityMatrix, StateInvariantError
from eit.model.params import LambdaParams
from eit.model.schedule import FieldSchedule, omega1_at, omega2_at
from eit.model.units import TWO_PI
from eit.ode.config import DEFAULT_CONFIG, OdeConfig
from eit.ode.equations import rhs_matrix
from eit.shared.errors import SimulationError, UsageError


logger = logging.getLogger(__name__)


class StepFailure(SimulationError):
    """Raised when the adaptive step size underflows."""

    pass


class InvariantBreach(SimulationError):
    """Raised when trace or positivity drifts beyond what rounding explains."""

    pass


class BadGrid(UsageError):
    """Raised for non-ascending time grids, out-of-range tolerances or short warmups."""

    pass


class SteadyStateUndefined(SimulationError):
    """Raised when the stationary state is not unique (e.g. both fields off)."""

    pass


_COLUMNS = ("aa", "bb", "cc", "ab", "ac", "bc", "ba", "ca", "cb")


@dataclass(frozen=True)
class Trajectory:
    """
    Time-sampled density-matrix evolution.

    Attributes:
        times: Ascending sample times (μs)
        states: One DensityMatrix per sample time
        nfev: Right-hand-side evaluations spent by the integrator
    """

    times: np.ndarray
    states: Tuple[DensityMatrix, ...]
    nfev: int = 0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.states)

    def coherence(self, label: str) -> np.ndarray:
        """Complex samples of ρ_αβ for a two-letter label such as "bc"."""
        if label not in _COLUMNS:
            raise KeyError(f"Unknown density-matrix entry '{label}'")
        if label not in self._cache:
            self._cache[label] = np.array([s.entry(label) for s in self.states])
        return self._cache[label]

    def population(self, label: str) -> np.ndarray:
        """Real samples of ρ_aa, ρ_bb or ρ_cc ("a", "b" or "c")."""
        return self.coherence(label * 2).real

    @property
    def im_rho_bc(self) -> np.ndarray:
        return self.coherence("bc").imag

    @property
    def final(self) -> DensityMatrix:
        return self.states[-1]


def _check_grid(t_grid: np.ndarray, rel_tol: float) -> None:
    if t_grid.ndim != 1 or t_grid.size == 0:
        raise BadGrid("Time grid must be a non-empty 1-D sequence")
    if np.any(np.diff(t_grid) <= 0.0):
        raise BadGrid("Time grid must be strictly ascending")
    if not 1e-14 < rel_tol < 1e-3:
        raise BadGrid(f"rel_tol must lie in (1e-14, 1e-3), got {rel_tol}")


def _segments(t_grid: np.ndarray, switch_time: float):
    """Split [t_grid[0], t_grid[-1]] at the switch instant when it lies strictly inside."""
    t0, t1 = float(t_grid[0]), float(t_grid[-1])
    if t0 < switch_time < t1:
        return [(t0, switch_time), (switch_time, t1)]
    return [(t0, t1)]


def evolve(
    rho0: DensityMatrix,
    schedule: FieldSchedule,
    params: LambdaParams,
    t_grid: Sequence[float],
    rel_tol: Optional[float] = None,
    config: Optional[OdeConfig] = None,
) -> Trajectory:
    """
    Integrate the equations of motion from `rho0` at `t_grid[0]`.

    Args:
        rho0: State at the first grid time
        schedule: Coupling-field switching schedule
        params: Atom and probe parameters
        t_grid: Strictly ascending output times (μs)
        rel_tol: Relative local-error tolerance (default from config)
        config: Integrator configuration

    Returns:
        Trajectory sampled at t_grid

    Raises:
        StepFailure: step size underflow
        InvariantBreach: trace drift or negative eigenvalues along the trajectory
        BadGrid: invalid grid or tolerance
    """
    config = config or DEFAULT_CONFIG
    rel_tol = config.rel_tol if rel_tol is None else rel_tol
    t_grid = np.asarray(t_grid, dtype=float)
    _check_grid(t_grid, rel_tol)
    _log = f"[module=ode] [op=evolve] [mode={schedule.mode.value}] "

    y = rho0.to_vector()
    samples = [y]
    nfev = 0

    for seg_start, seg_end in _segments(t_grid, schedule.switch_time) if t_grid.size > 1 else []:
        # Field values are constant on [seg_start, seg_end)
        omega1 = omega1_at(schedule, seg_start)
        omega2 = omega2_at(schedule, params, seg_start)
        A, b = rhs_matrix(params, omega1, omega2)

        t_out = t_grid[(t_grid > seg_start) & (t_grid <= seg_end)]
        t_req = t_out if t_out.size and t_out[-1] == seg_end else np.append(t_out, seg_end)

        sol = solve_ivp(
            lambda _t, yy: A @ yy + b,
            (seg_start, seg_end),
            y,
            method=config.method,
            t_eval=t_req,
            rtol=rel_tol,
            atol=rel_tol * config.atol_ratio,
        )
        nfev += sol.nfev
        if sol.status < 0:
            logger.error(f"{_log}Integrator failed on [{seg_start}, {seg_end}]: {sol.message}")
            raise StepFailure(f"Integration failed on [{seg_start}, {seg_end}] μs: {sol.message}")

        samples.extend(sol.y[:, k] for k in range(t_out.size))
        y = sol.y[:, -1]

    states = tuple(_to_state(v, config) for v in samples)
    logger.debug(f"{_log}Integrated {t_grid.size} samples | nfev={nfev}, rel_tol={rel_tol:g}")
    return Trajectory(times=t_grid, states=states, nfev=nfev)


def _to_state(y: np.ndarray, config: OdeConfig) -> DensityMatrix:
    try:
        state = DensityMatrix.from_vector(y)
    except StateInvariantError as e:
        raise InvariantBreach(f"Integrated state left the physical region: {e}") from e
    drift = abs(state.trace - 1.0)
    if drift > config.trace_breach:
        raise InvariantBreach(f"Trace drift {drift:.3e} exceeds {config.trace_breach:g}")
    min_eig = state.min_eigenvalue()
    if min_eig < config.positivity_floor:
        raise InvariantBreach(f"Negative eigenvalue {min_eig:.3e} along trajectory")
    return state


def prepare_steady(
    params: LambdaParams,
    schedule: FieldSchedule,
    warmup: float,
    initial: Optional[Tuple[float, float]] = None,
    rel_tol: Optional[float] = None,
    config: Optional[OdeConfig] = None,
) -> DensityMatrix:
    """
    Evolve the pre-switch fields for `warmup` μs and return the state at the switch.

    Args:
        params: Atom and probe parameters
        schedule: Schedule whose pre-switch fields act during the warmup
        warmup: Warmup duration (μs), at least 10 mean decay times
        initial: (ρ_aa, ρ_bb) at the start of the warmup (default 0.05, 0.95)

    Raises:
        BadGrid: warmup shorter than 10/Γ
    """
    config = config or DEFAULT_CONFIG
    min_warmup = 10.0 / (TWO_PI * params.gamma)
    if warmup < min_warmup:
        raise BadGrid(f"warmup {warmup:g} μs is shorter than 10/Γ = {min_warmup:g} μs")
    rho_aa, rho_bb = initial or config.warmup_initial
    start = schedule.switch_time - warmup
    traj = evolve(
        DensityMatrix.populations(rho_aa, rho_bb),
        schedule,
        params,
        [start, schedule.switch_time],
        rel_tol=rel_tol,
        config=config,
    )
    logger.info(
        f"[module=ode] [op=prepare_steady] Warmup {warmup:g} μs done | "
        f"Im rho_bc={traj.final.bc.imag:.6e}, rho_bb={traj.final.bb:.6f}"
    )
    return traj.final


def steady_state(params: LambdaParams, omega1: float, omega2: Optional[float] = None) -> DensityMatrix:
    """
    Exact stationary state for constant fields (solves A·y + b = 0).

    Raises:
        SteadyStateUndefined: the stationary state is not unique
    """
    omega2 = params.omega2 if omega2 is None else omega2
    A, b = rhs_matrix(params, omega1, omega2)
    if np.linalg.cond(A) > 1e12:
        raise SteadyStateUndefined(
            f"Stationary state not unique for omega1={omega1}, omega2={omega2}"
        )
    y = np.linalg.solve(A, -b)
    return DensityMatrix.from_vector(y)
