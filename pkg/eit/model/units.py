"""
Unit conventions.

Every public interface takes cyclic frequencies in MHz and times in μs.
Time-domain formulas work with angular frequencies (rad/μs); this module
is the single place where the conversion happens.
"""

import numpy as np

TWO_PI = 2.0 * np.pi


def angular(f_mhz):
    """Convert a cyclic frequency in MHz (scalar or array) to rad/μs."""
    return TWO_PI * f_mhz


def cyclic(w_rad_per_us):
    """Convert an angular frequency in rad/μs back to cyclic MHz."""
    return w_rad_per_us / TWO_PI
