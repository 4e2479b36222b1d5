"""
Observables: transmission, steady spectra and transient scan grids.
"""

from eit.observe.config import DEFAULT_CONFIG, ScanConfig
from eit.observe.io import diverging_colors, write_pixmap, write_scan_csv
from eit.observe.scan import (
    Engine,
    EngineUnsupported,
    Quantity,
    ScanGrid,
    rabi_peak_curves,
    scan,
)
from eit.observe.transmission import (
    absorption_minima,
    dressed_ridges,
    spectrum,
    transmission,
    uncoupled_absorption,
)

__all__ = [
    "DEFAULT_CONFIG",
    "ScanConfig",
    "diverging_colors",
    "write_pixmap",
    "write_scan_csv",
    "Engine",
    "EngineUnsupported",
    "Quantity",
    "ScanGrid",
    "rabi_peak_curves",
    "scan",
    "absorption_minima",
    "dressed_ridges",
    "spectrum",
    "transmission",
    "uncoupled_absorption",
]
