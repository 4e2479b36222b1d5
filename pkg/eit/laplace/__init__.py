"""
Laplace-domain engine: rational transforms, partial fractions and residue inversion.
"""

from eit.laplace.config import DEFAULT_CONFIG, LaplaceConfig
from eit.laplace.polynomial import ComplexPolynomial, NoConvergence, poly_roots
from eit.laplace.rational import (
    DegeneratePoles,
    ExpansionMismatch,
    PoleExpansion,
    RationalFunction,
    UnstablePole,
    invert,
    long_time_limit,
    partial_fractions,
)
from eit.laplace.systems import (
    COHERENCES,
    REMAINING,
    InterpolationMismatch,
    SingularSystem,
    Unsupported,
    characteristic_polynomial,
    coherence_system,
    p4_approx,
    p4_exact,
    pump_denominator,
    pump_epochs,
    pump_system,
    reconstruct_remaining,
    system_residual,
    turnoff_first_order,
    turnon_system,
)

__all__ = [
    "DEFAULT_CONFIG",
    "LaplaceConfig",
    "ComplexPolynomial",
    "NoConvergence",
    "poly_roots",
    "DegeneratePoles",
    "ExpansionMismatch",
    "PoleExpansion",
    "RationalFunction",
    "UnstablePole",
    "invert",
    "long_time_limit",
    "partial_fractions",
    "COHERENCES",
    "REMAINING",
    "InterpolationMismatch",
    "SingularSystem",
    "Unsupported",
    "characteristic_polynomial",
    "coherence_system",
    "p4_approx",
    "p4_exact",
    "pump_denominator",
    "pump_epochs",
    "pump_system",
    "reconstruct_remaining",
    "system_residual",
    "turnoff_first_order",
    "turnon_system",
]
