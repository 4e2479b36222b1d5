"""
Compare graph construction.

Builds the graph that runs the ODE, Laplace and analytic engines on the
same parameter samples and tabulates their disagreement:

    Entry -> route_next_engine
      -> "ode_node"      -> ode_wrapper      -> route_next_engine
      -> "laplace_node"  -> laplace_wrapper  -> route_next_engine
      -> "analytic_node" -> analytic_wrapper -> route_next_engine
      -> "complete"      -> complete_node    -> END

A node that fails for one sample records the error and stores None for that
sample; a node never leaves its slot empty, so routing always advances.
"""

import logging
import time
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from langgraph.graph import END, StateGraph

from eit.analytic.turnoff import turnoff_im_rbc
from eit.graph.router import route_next_engine
from eit.graph.samples import TURNON_POPULATIONS, time_grid, turnoff_tolerance
from eit.graph.state import CompareState
from eit.laplace.rational import invert, partial_fractions
from eit.laplace.systems import turnon_system
from eit.model.density import DensityMatrix
from eit.model.params import LambdaParams
from eit.model.schedule import FieldSchedule, SwitchMode
from eit.ode.config import OdeConfig
from eit.ode.integrate import evolve, steady_state
from eit.shared.contracts.compare_report import CompareReport, OracleResidual
from eit.shared.logging import get_or_create_logger


logger = logging.getLogger(__name__)

TURNON_TOLERANCE = 1e-6
COMPARE_ODE_CONFIG = OdeConfig(rel_tol=1e-10)


def _samples(state: CompareState) -> List[LambdaParams]:
    return [LambdaParams(**s) for s in state["samples"]]


def _grid(state: CompareState, params: LambdaParams) -> np.ndarray:
    return time_grid(params, state["grid_points"], state["decay_times"])


def _turnon_initial() -> DensityMatrix:
    return DensityMatrix.populations(*TURNON_POPULATIONS)


def _run_per_sample(
    state: CompareState,
    node: str,
    compute: Callable[[LambdaParams, np.ndarray], Dict[str, List[float]]],
) -> Dict[str, Any]:
    """Apply `compute` to every sample, collecting failures instead of raising."""
    run_id = state.get("run_id", "unknown")
    _log = f"[run={run_id}] [graph=compare] [node={node}] "
    run_logger = get_or_create_logger(run_id, state.get("logs_dir", "logs"))
    samples = _samples(state)
    logger.info(f"{_log}Entering node | samples={len(samples)}")

    outputs: List[Optional[Dict[str, List[float]]]] = []
    errors: List[str] = []
    for k, params in enumerate(samples):
        start = time.perf_counter()
        try:
            outputs.append(compute(params, _grid(state, params)))
            run_logger.log_operation(
                f"{node}:sample{k}", (time.perf_counter() - start) * 1000.0, details={"sample": k}
            )
        except Exception as e:
            logger.exception(f"{_log}Sample {k} failed: {e}")
            run_logger.log_operation(
                f"{node}:sample{k}",
                (time.perf_counter() - start) * 1000.0,
                success=False,
                error=str(e),
            )
            outputs.append(None)
            errors.append(f"{node} sample {k}: {e}")

    logger.info(f"{_log}Node done | failures={len(errors)}")
    return {
        f"{node.removesuffix('_node')}_output": {"samples": outputs},
        "current_node": f"{node}_complete",
        "errors": errors,
        "messages": [
            {
                "role": "system",
                "node": node,
                "content": f"{node} evaluated {len(samples)} samples with {len(errors)} failures",
            }
        ],
    }


def _ode_compute(params: LambdaParams, t: np.ndarray) -> Dict[str, List[float]]:
    turnon = evolve(
        _turnon_initial(),
        FieldSchedule.for_params(SwitchMode.TURN_ON, params),
        params,
        t,
        config=COMPARE_ODE_CONFIG,
    )
    turnoff = evolve(
        steady_state(params, params.omega1),
        FieldSchedule.for_params(SwitchMode.TURN_OFF, params),
        params,
        t,
        config=COMPARE_ODE_CONFIG,
    )
    return {"turnon": turnon.im_rho_bc.tolist(), "turnoff": turnoff.im_rho_bc.tolist()}


def _laplace_compute(params: LambdaParams, t: np.ndarray) -> Dict[str, List[float]]:
    r_bc = turnon_system(params, _turnon_initial())["bc"]
    values = invert(partial_fractions(r_bc), t)
    return {"turnon": np.imag(values).tolist()}


def _analytic_compute(params: LambdaParams, t: np.ndarray) -> Dict[str, List[float]]:
    return {"turnoff": np.asarray(turnoff_im_rbc(params, t), dtype=float).tolist()}


def _ode_wrapper(state: CompareState) -> Dict[str, Any]:
    return _run_per_sample(state, "ode_node", _ode_compute)


def _laplace_wrapper(state: CompareState) -> Dict[str, Any]:
    return _run_per_sample(state, "laplace_node", _laplace_compute)


def _analytic_wrapper(state: CompareState) -> Dict[str, Any]:
    return _run_per_sample(state, "analytic_node", _analytic_compute)


def _max_abs(a: Optional[dict], b: Optional[dict], key: str) -> Optional[float]:
    if a is None or b is None:
        return None
    return float(np.max(np.abs(np.asarray(a[key]) - np.asarray(b[key]))))


def _complete_node(state: CompareState) -> Dict[str, Any]:
    """Tabulate Laplace-vs-ODE (turn-on) and analytic-vs-ODE (turn-off) residuals."""
    run_id = state.get("run_id", "unknown")
    _log = f"[run={run_id}] [graph=compare] [node=complete] "
    samples = _samples(state)
    ode = state["ode_output"]["samples"]
    laplace = state["laplace_output"]["samples"]
    analytic = state["analytic_output"]["samples"]

    rows: List[OracleResidual] = []
    for k, params in enumerate(samples):
        checks = (
            ("turnon laplace-vs-ode", _max_abs(laplace[k], ode[k], "turnon"), TURNON_TOLERANCE),
            ("turnoff analytic-vs-ode", _max_abs(analytic[k], ode[k], "turnoff"), turnoff_tolerance(params)),
        )
        for check, value, tolerance in checks:
            if value is not None:
                rows.append(OracleResidual(sample=k, check=check, max_abs=value, tolerance=tolerance))

    report = CompareReport(
        run_id=run_id, seed=state.get("seed", 0), rows=rows, errors=list(state.get("errors", []))
    )
    failed = sum(not row.passed for row in rows)
    logger.info(
        f"{_log}Pipeline complete | rows={len(rows)}, failed={failed}, "
        f"errors={len(report.errors)} -> END"
    )
    return {
        "report": report.model_dump(),
        "current_node": "complete",
        "messages": [
            {
                "role": "system",
                "node": "complete",
                "content": f"Compare complete. {len(rows)} residuals, {failed} above tolerance.",
            }
        ],
    }


def create_compare_graph():
    """
    Create and compile the compare graph.

    Returns:
        Compiled LangGraph application ready for execution.
    """
    graph = StateGraph(CompareState)

    graph.add_node("ode_node", _ode_wrapper)
    graph.add_node("laplace_node", _laplace_wrapper)
    graph.add_node("analytic_node", _analytic_wrapper)
    graph.add_node("complete", _complete_node)

    routes = {
        "ode_node": "ode_node",
        "laplace_node": "laplace_node",
        "analytic_node": "analytic_node",
        "complete": "complete",
    }
    # Conditional entry point - start from whichever slot is still empty
    graph.set_conditional_entry_point(route_next_engine, routes)
    for node in ("ode_node", "laplace_node", "analytic_node"):
        graph.add_conditional_edges(node, route_next_engine, routes)

    graph.add_edge("complete", END)

    return graph.compile()


def initial_state(
    run_id: str,
    samples: List[LambdaParams],
    seed: int,
    grid_points: int = 200,
    decay_times: float = 5.0,
    logs_dir: str = "logs",
) -> CompareState:
    """Fresh state with every engine slot empty."""
    return {
        "run_id": run_id,
        "seed": seed,
        "samples": [s.model_dump() for s in samples],
        "grid_points": grid_points,
        "decay_times": decay_times,
        "logs_dir": logs_dir,
        "ode_output": None,
        "laplace_output": None,
        "analytic_output": None,
        "report": None,
        "current_node": "start",
        "errors": [],
        "messages": [],
    }
