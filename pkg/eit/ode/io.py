"""
Trajectory CSV output.
"""

from pathlib import Path
from typing import Union

import numpy as np

from eit.ode.integrate import Trajectory

TRAJECTORY_HEADER = (
    "t_us,re_rho_aa,re_rho_bb,re_rho_cc,re_rho_ab,im_rho_ab,"
    "re_rho_ac,im_rho_ac,re_rho_bc,im_rho_bc"
)


def trajectory_table(trajectory: Trajectory) -> np.ndarray:
    """Rows of (t, aa, bb, cc, Re ab, Im ab, Re ac, Im ac, Re bc, Im bc)."""
    ab = trajectory.coherence("ab")
    ac = trajectory.coherence("ac")
    bc = trajectory.coherence("bc")
    return np.column_stack(
        [
            trajectory.times,
            trajectory.population("a"),
            trajectory.population("b"),
            trajectory.population("c"),
            ab.real,
            ab.imag,
            ac.real,
            ac.imag,
            bc.real,
            bc.imag,
        ]
    )


def write_trajectory_csv(trajectory: Trajectory, path: Union[str, Path]) -> Path:
    """Write a trajectory with full double precision (17 significant digits)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(
        path,
        trajectory_table(trajectory),
        delimiter=",",
        header=TRAJECTORY_HEADER,
        comments="",
        fmt="%.17g",
    )
    return path
