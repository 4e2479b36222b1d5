"""
Closed-form approximations for pumping, turn-on and turn-off transients.
"""

from eit.analytic.pumping import pump_intermediate
from eit.analytic.turnoff import (
    steady_eit_lineshape,
    turnoff_im_rbc,
    turnoff_initial_coherence,
    turnoff_initial_state,
    turnoff_rho_bc,
)
from eit.analytic.turnon import (
    PhiDecomposition,
    turnon_first_order,
    turnon_first_order_transform,
    turnon_nutation,
    turnon_phi,
)

__all__ = [
    "PhiDecomposition",
    "pump_intermediate",
    "steady_eit_lineshape",
    "turnoff_im_rbc",
    "turnoff_initial_coherence",
    "turnoff_initial_state",
    "turnoff_rho_bc",
    "turnon_first_order",
    "turnon_first_order_transform",
    "turnon_nutation",
    "turnon_phi",
]
