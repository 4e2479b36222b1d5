"""
Scan-grid output: CSV table and P6 heat map.
"""

from pathlib import Path
from typing import Union

import numpy as np

from eit.observe.scan import ScanGrid


def write_scan_csv(grid: ScanGrid, path: Union[str, Path]) -> Path:
    """First row `t_us,<times>`, then one `<Δ₂>,<values>` row per detuning."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = np.column_stack([grid.delta2_axis, grid.values])
    header = ",".join(["t_us"] + [f"{t:.17g}" for t in grid.time_axis])
    np.savetxt(path, table, delimiter=",", header=header, comments="", fmt="%.17g")
    return path


def diverging_colors(values: np.ndarray) -> np.ndarray:
    """
    RGB bytes for a blue–white–red map symmetric about zero.

    Scaled by max|value|; an all-zero grid is white.
    """
    peak = float(np.max(np.abs(values))) if values.size else 0.0
    x = values / peak if peak > 0.0 else np.zeros_like(values, dtype=float)
    pos = np.clip(x, 0.0, 1.0)
    neg = np.clip(-x, 0.0, 1.0)
    rgb = np.stack([1.0 - neg, 1.0 - pos - neg, 1.0 - pos], axis=-1)
    return np.round(255.0 * rgb).astype(np.uint8)


def write_pixmap(grid: ScanGrid, path: Union[str, Path]) -> Path:
    """
    Binary P6 image with one pixel per cell: time runs left to right,
    Δ₂ increases upward.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pixels = diverging_colors(grid.values[::-1])
    height, width = grid.values.shape
    with open(path, "wb") as f:
        f.write(f"P6\n{width} {height}\n255\n".encode("ascii"))
        f.write(pixels.tobytes())
    return path
