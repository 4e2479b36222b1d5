"""
Intermediate-epoch plateaus of optical pumping by the probe alone.
"""

import logging
from typing import Tuple

from eit.model.density import DensityMatrix
from eit.model.params import LambdaParams


logger = logging.getLogger(__name__)


def pump_intermediate(rho0: DensityMatrix, params: LambdaParams) -> Tuple[complex, float, float]:
    """
    Plateau values between 1/(2Γ) and 1/|p₄|, first order in Ω₂.

    Returns:
        (ρ_bc, ρ_aa, ρ_bb) on the plateau
    """
    if params.omega1 != 0.0 or not rho0.is_diagonal:
        logger.warning(
            "[module=analytic] [op=pump_intermediate] Plateau formulas assume omega1 = 0 "
            "and a diagonal initial state"
        )
    excess = 1.0 - rho0.aa + rho0.bb
    rho_bc = -(params.omega2 / 4.0) * excess / complex(params.delta2, -params.gamma)
    return rho_bc, (1.0 + rho0.aa - rho0.bb) / 2.0, excess / 2.0
