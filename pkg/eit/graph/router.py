"""
Routing logic for the compare graph.

Runs the engines in a fixed order, skipping any whose slot is already filled.
"""

import logging
from typing import Literal

from eit.graph.state import CompareState


logger = logging.getLogger(__name__)

NodeName = Literal["ode_node", "laplace_node", "analytic_node", "complete"]


def route_next_engine(state: CompareState) -> NodeName:
    """
    Determine the next node from the populated slots.

    Routing logic:
    1. If ode_output is missing -> run ode
    2. If laplace_output is missing -> run laplace
    3. If analytic_output is missing -> run analytic
    4. Otherwise -> complete
    """
    run_id = state.get("run_id", "unknown")
    has_ode = state.get("ode_output") is not None
    has_laplace = state.get("laplace_output") is not None
    has_analytic = state.get("analytic_output") is not None
    _log = f"[run={run_id}] [graph=compare] [router=route_next_engine] "
    _slots = f"ode={has_ode}, laplace={has_laplace}, analytic={has_analytic}"

    if not has_ode:
        target = "ode_node"
    elif not has_laplace:
        target = "laplace_node"
    elif not has_analytic:
        target = "analytic_node"
    else:
        target = "complete"
    logger.info(f"{_log}Routing to '{target}' | {_slots}")
    return target
