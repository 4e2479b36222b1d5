"""
Exponential envelope of the turn-off ringing.
"""

import logging
from typing import Optional

import numpy as np
from scipy.optimize import curve_fit
from scipy.signal import find_peaks

from eit.fit.config import DEFAULT_CONFIG, FitConfig
from eit.fit.trace import Trace
from eit.model.units import TWO_PI
from eit.shared.errors import SimulationError


logger = logging.getLogger(__name__)


class TooFewExtrema(SimulationError):
    """Raised when a trace does not ring enough to fit an envelope."""

    pass


class EnvelopeNoConvergence(SimulationError):
    """Raised when the exponential fit to the extrema does not converge."""

    pass


def _envelope(t, amplitude, rate):
    return amplitude * np.exp(-TWO_PI * rate * t)


def envelope_decay(
    trace: Trace, asymptote: Optional[float] = None, config: Optional[FitConfig] = None
) -> float:
    """
    Decay rate γ (MHz) of |extremum − asymptote| ≈ A·e^{−2πγt}.

    Args:
        trace: Ringing trace
        asymptote: Long-time level; defaults to the last sample
        config: Extremum selection settings

    Raises:
        TooFewExtrema: fewer than config.min_extrema usable extrema
    """
    config = config or DEFAULT_CONFIG
    values = trace.transmissions
    level = float(values[-1]) if asymptote is None else float(asymptote)
    maxima, _ = find_peaks(values)
    minima, _ = find_peaks(-values)
    idx = np.sort(np.concatenate([maxima, minima]))
    amplitude = np.abs(values[idx] - level)
    if idx.size:
        keep = amplitude > config.min_relative_extremum * amplitude.max()
        idx, amplitude = idx[keep], amplitude[keep]
    if idx.size < config.min_extrema:
        raise TooFewExtrema(f"Found {idx.size} usable extrema, need {config.min_extrema}")

    times = trace.times[idx]
    # Log-linear estimate seeds the nonlinear fit
    slope, intercept = np.polyfit(times, np.log(amplitude), 1)
    p0 = (float(np.exp(intercept)), max(float(-slope / TWO_PI), 1e-6))
    try:
        (amp, rate), _ = curve_fit(_envelope, times, amplitude, p0=p0, maxfev=10000)
    except RuntimeError as e:
        raise EnvelopeNoConvergence(f"Envelope fit over {idx.size} extrema failed: {e}") from e
    logger.info(
        f"[module=fit] [op=envelope_decay] {idx.size} extrema | rate={rate:.4f} MHz, amplitude={amp:.4e}"
    )
    return float(rate)
