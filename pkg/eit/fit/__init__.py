"""
Fitting of turn-off transmission traces.
"""

from eit.fit.config import DEFAULT_CONFIG, DEFAULT_FREE, FitConfig
from eit.fit.envelope import EnvelopeNoConvergence, TooFewExtrema, envelope_decay
from eit.fit.least_squares import (
    FITTABLE,
    FitNoConvergence,
    FitResult,
    SingularJacobian,
    fit_turnoff,
    recovery_study,
    write_fit_report,
)
from eit.fit.model import Nuisance, model_turnoff_im, model_turnoff_T
from eit.fit.trace import BadTrace, Trace, read_trace_csv, synthetic_trace, write_trace_csv

__all__ = [
    "DEFAULT_CONFIG",
    "DEFAULT_FREE",
    "FitConfig",
    "EnvelopeNoConvergence",
    "TooFewExtrema",
    "envelope_decay",
    "FITTABLE",
    "FitNoConvergence",
    "FitResult",
    "SingularJacobian",
    "fit_turnoff",
    "recovery_study",
    "write_fit_report",
    "Nuisance",
    "model_turnoff_im",
    "model_turnoff_T",
    "BadTrace",
    "Trace",
    "read_trace_csv",
    "synthetic_trace",
    "write_trace_csv",
]
