"""
Levenberg–Marquardt fits of turn-off traces.

Pre-switch populations stay at (ρ_aa, ρ_bb) = (0, 1); only the names in
`free` move, everything else is taken from the initial guess.
"""

import logging
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy.optimize import least_squares
from tqdm import tqdm

from eit.fit.config import DEFAULT_CONFIG, DEFAULT_FREE, FitConfig
from eit.fit.model import Nuisance, model_turnoff_im, model_turnoff_T
from eit.fit.trace import Trace, synthetic_trace
from eit.model.params import LambdaParams
from eit.shared.errors import SimulationError, UsageError


logger = logging.getLogger(__name__)

PARAM_NAMES = ("omega1", "delta1", "delta2", "gamma", "gamma_ba", "uncoupled_fraction")
NUISANCE_NAMES = ("scale", "t0", "baseline")
FITTABLE = PARAM_NAMES + NUISANCE_NAMES

Observable = Literal["T", "im"]


class FitNoConvergence(SimulationError):
    """Raised when the iteration cap is reached before the tolerances are met."""

    pass


class SingularJacobian(SimulationError):
    """Raised when freed parameters cannot be separated by the data."""

    pass


class FitResult(BaseModel):
    """Outcome of a turn-off fit."""

    model_config = ConfigDict(frozen=True)

    params: LambdaParams = Field(description="Fitted parameters (free subset moved, rest frozen)")
    nuisance: Nuisance = Field(description="Fitted scale, delay and baseline")
    free: Tuple[str, ...] = Field(description="Names of the fitted parameters")
    stderr: Dict[str, float] = Field(description="Standard error per free parameter")
    rss: float = Field(description="Residual sum of squares at the optimum")
    converged: bool = Field(description="Whether a tolerance criterion ended the fit")
    nfev: int = Field(default=0, description="Model evaluations")

    @field_validator("rss")
    @classmethod
    def _finite_rss(cls, value: float) -> float:
        if not np.isfinite(value):
            raise ValueError(f"rss must be finite, got {value}")
        return value

    @field_validator("stderr")
    @classmethod
    def _non_negative_stderr(cls, value: Dict[str, float]) -> Dict[str, float]:
        for name, err in value.items():
            if err < 0.0:
                raise ValueError(f"stderr of {name} is negative: {err}")
        return value

    def value(self, name: str) -> float:
        return _get(self.params, self.nuisance, name)


def _get(params: LambdaParams, nuisance: Nuisance, name: str) -> float:
    if name in NUISANCE_NAMES:
        return getattr(nuisance, name)
    return getattr(params, name)


def _assemble(
    params: LambdaParams, nuisance: Nuisance, free: Sequence[str], x: np.ndarray
) -> Tuple[LambdaParams, Nuisance]:
    """Place x into copies of params/nuisance; `gamma` sets both decay rates."""
    param_update: Dict[str, float] = {}
    nuisance_update: Dict[str, float] = {}
    for name, value in zip(free, x):
        if name in NUISANCE_NAMES:
            nuisance_update[name] = float(value)
        elif name == "gamma":
            param_update["gamma_ca"] = float(value)
            param_update["gamma_cb"] = float(value)
        else:
            param_update[name] = float(value)
    data = {**params.model_dump(), **param_update}
    return LambdaParams(**data), nuisance.model_copy(update=nuisance_update)


def _check_free(free: Sequence[str]) -> Tuple[str, ...]:
    free = tuple(free)
    if not free:
        raise UsageError("At least one parameter must be free")
    unknown = [name for name in free if name not in FITTABLE]
    if unknown:
        raise UsageError(f"Cannot fit {unknown}; choose from {list(FITTABLE)}")
    if len(set(free)) != len(free):
        raise UsageError(f"Free parameters repeat: {list(free)}")
    return free


def _collinear_columns(jac: np.ndarray, free: Sequence[str], config: FitConfig) -> Optional[List[str]]:
    norms = np.linalg.norm(jac, axis=0)
    if np.any(norms == 0.0):
        return [name for name, n in zip(free, norms) if n == 0.0]
    scaled = jac / norms
    _, singular, vt = np.linalg.svd(scaled, full_matrices=False)
    if singular[-1] > 0.0 and singular[0] / singular[-1] <= config.condition_limit:
        return None
    weakest = np.abs(vt[-1])
    return [name for name, w in zip(free, weakest) if w > config.collinear_weight]


def fit_turnoff(
    trace: Trace,
    initial_params: LambdaParams,
    initial_nuisance: Optional[Nuisance] = None,
    free: Sequence[str] = DEFAULT_FREE,
    observable: Observable = "T",
    config: Optional[FitConfig] = None,
) -> FitResult:
    """
    Least-squares fit of the turn-off model to a trace.

    Args:
        trace: Samples to fit (transmission, or Im ρ_bc when observable="im")
        initial_params: Starting point; non-free fields stay fixed
        initial_nuisance: Starting scale/t0/baseline
        free: Names to fit, from PARAM_NAMES and NUISANCE_NAMES
        observable: "T" for transmission traces, "im" for Im ρ_bc traces
        config: Tolerances and caps

    Raises:
        UsageError: empty or unknown free set
        FitNoConvergence: iteration cap reached
        SingularJacobian: freed parameters are collinear at the optimum
    """
    config = config or DEFAULT_CONFIG
    free = _check_free(free)
    initial_nuisance = initial_nuisance or Nuisance()
    model = model_turnoff_T if observable == "T" else model_turnoff_im
    _log = f"[module=fit] [op=fit_turnoff] [free={','.join(free)}] "

    x0 = np.array([_get(initial_params, initial_nuisance, name) for name in free], dtype=float)
    penalty = np.full(trace.times.size, config.invalid_penalty)

    def residuals(x: np.ndarray) -> np.ndarray:
        try:
            params, nuisance = _assemble(initial_params, initial_nuisance, free, x)
        except (UsageError, ValueError):
            return penalty
        return np.asarray(model(params, nuisance, trace.times), dtype=float) - trace.transmissions

    logger.info(f"{_log}Fitting {len(trace)} samples from x0={x0.tolist()}")
    result = least_squares(
        residuals,
        x0,
        method="lm",
        ftol=config.ftol,
        xtol=config.xtol,
        gtol=config.gtol,
        max_nfev=config.max_iterations * (len(free) + 1),
    )
    if result.status == 0:
        logger.error(f"{_log}Iteration cap reached after {result.nfev} evaluations")
        raise FitNoConvergence(
            f"Fit did not converge within {config.max_iterations} iterations "
            f"({result.nfev} evaluations)"
        )

    collinear = _collinear_columns(result.jac, free, config)
    if collinear is not None:
        logger.error(f"{_log}Collinear Jacobian columns: {collinear}")
        raise SingularJacobian(
            f"Parameters {collinear} are not separately determined by this trace "
            f"(condition number above {config.condition_limit:g})"
        )

    rss = float(np.sum(result.fun ** 2))
    dof = max(trace.times.size - len(free), 1)
    covariance = np.linalg.inv(result.jac.T @ result.jac) * rss / dof
    stderr = {name: float(np.sqrt(max(covariance[k, k], 0.0))) for k, name in enumerate(free)}
    params, nuisance = _assemble(initial_params, initial_nuisance, free, result.x)

    logger.info(
        f"{_log}Converged | status={result.status}, nfev={result.nfev}, rss={rss:.3e}, "
        f"x={result.x.tolist()}"
    )
    return FitResult(
        params=params,
        nuisance=nuisance,
        free=free,
        stderr=stderr,
        rss=rss,
        converged=result.status > 0,
        nfev=int(result.nfev),
    )


def recovery_study(
    params: LambdaParams,
    nuisance: Nuisance,
    times: Sequence[float],
    noise: float,
    seeds: Sequence[int],
    free: Sequence[str] = ("delta2", "scale", "baseline"),
    initial_params: Optional[LambdaParams] = None,
    config: Optional[FitConfig] = None,
    show_progress: bool = False,
) -> List[float]:
    """
    Fit one noisy synthetic trace per seed and collect the fitted Δ₂.

    Failed fits contribute NaN.
    """
    initial_params = initial_params or params
    fitted: List[float] = []
    for seed in tqdm(seeds, desc="recovery", disable=not show_progress):
        trace = synthetic_trace(params, nuisance, times, noise=noise, seed=seed)
        try:
            result = fit_turnoff(trace, initial_params, nuisance, free=free, config=config)
            fitted.append(result.params.delta2)
        except SimulationError as e:
            logger.warning(f"[module=fit] [op=recovery_study] seed={seed} failed: {e}")
            fitted.append(float("nan"))
    return fitted


def write_fit_report(result: FitResult, path: Union[str, Path]) -> Path:
    """`name = value +/- stderr` per free parameter, then `rss` and `converged`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{name} = {result.value(name)!r} +/- {result.stderr[name]!r}" for name in result.free]
    lines.append(f"rss = {result.rss!r}")
    lines.append(f"converged = {'true' if result.converged else 'false'}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
