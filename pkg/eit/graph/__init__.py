"""
LangGraph pipeline comparing the ODE, Laplace and analytic engines.
"""

from eit.graph.build import create_compare_graph, initial_state
from eit.graph.router import route_next_engine
from eit.graph.samples import draw_samples, time_grid, turnoff_tolerance
from eit.graph.state import CompareState

__all__ = [
    "create_compare_graph",
    "initial_state",
    "route_next_engine",
    "draw_samples",
    "time_grid",
    "turnoff_tolerance",
    "CompareState",
]
