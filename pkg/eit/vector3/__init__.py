"""
Three-dimensional vector model of the decay-free Λ system.
"""

from eit.vector3.rotation import (
    RabiVector,
    StateVector3,
    averaged_fast_oscillation,
    case_a,
    case_b,
    im_rbc_first_order,
    im_rbc_of,
    precess,
    to_density_matrix,
    trajectory,
)

__all__ = [
    "RabiVector",
    "StateVector3",
    "averaged_fast_oscillation",
    "case_a",
    "case_b",
    "im_rbc_first_order",
    "im_rbc_of",
    "precess",
    "to_density_matrix",
    "trajectory",
]
