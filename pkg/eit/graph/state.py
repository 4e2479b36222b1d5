"""
Compare pipeline state schema.

Carries the sampled parameter sets plus one output slot per engine; each
engine node fills its slot and the complete node tabulates the residuals.
"""

import operator
from typing import Annotated, List, Optional, TypedDict


class CompareState(TypedDict):
    """
    State schema for the compare graph.

    Engine slots hold, per sample, the Im ρ_bc samples on that sample's
    time grid (None where the engine failed for that sample).
    """

    # Run context
    run_id: str
    seed: int
    samples: List[dict]
    grid_points: int
    decay_times: float
    logs_dir: str

    # Engine handoff slots (populated as nodes complete)
    ode_output: Optional[dict]
    laplace_output: Optional[dict]
    analytic_output: Optional[dict]
    report: Optional[dict]

    # Pipeline tracking
    current_node: str
    errors: Annotated[List[str], operator.add]
    messages: Annotated[List[dict], operator.add]
