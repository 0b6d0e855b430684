"""Streamline extraction in the co-moving frame.

The streamfunction of the co-moving frame is the imaginary part of the
scaled horizontal-slit map.  It is sampled on a uniform grid over the
preimage square [-1, 1]^2, masked to strictly interior points, contoured by
marching squares with linear interpolation, and the resulting polylines are
mapped through the physical map and clipped to a viewing window.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from skimage import measure

from .domain import interior_mask
from .errors import EmptyGrid
from .heleshaw import BubbleSolution, comoving_streamfunction, eval_physical
from .slitmaps import POLE_CLEARANCE, Geometry


@dataclass(frozen=True)
class Streamline:
    """One polyline of constant co-moving streamfunction."""

    level: float
    zeta: np.ndarray = field(repr=False)
    z: np.ndarray = field(repr=False)


def default_window(solution: BubbleSolution) -> tuple[float, float, float, float]:
    """Viewing window (x0, x1, y0, y1) from the bubble bounding box, expanded
    by one box size per side, intersected with the geometry's strip."""
    if solution.bubble_curves:
        xs = np.concatenate([c.real for c in solution.bubble_curves])
        ys = np.concatenate([c.imag for c in solution.bubble_curves])
        x0, x1 = float(xs.min()), float(xs.max())
        y0, y1 = float(ys.min()), float(ys.max())
        wx = max(x1 - x0, 1e-6)
        wy = max(y1 - y0, 1e-6)
        x0, x1 = x0 - wx, x1 + wx
        y0, y1 = y0 - wy, y1 + wy
    else:
        x0, x1, y0, y1 = -4.0, 4.0, -4.0, 4.0
    geometry = solution.problem.geometry
    if geometry is Geometry.CHANNEL:
        y0, y1 = -1.0, 1.0
    elif geometry is Geometry.HALF_PLANE:
        y0 = 0.0
        y1 = max(y1, 0.5)
    return x0, x1, y0, y1


def _split_runs(keep: np.ndarray):
    """Yield slices of consecutive True runs of length at least 2."""
    idx = np.flatnonzero(keep)
    if idx.size == 0:
        return
    breaks = np.flatnonzero(np.diff(idx) > 1)
    start = 0
    for b in list(breaks) + [idx.size - 1]:
        run = idx[start : b + 1]
        if run.size >= 2:
            yield slice(run[0], run[-1] + 1)
        start = b + 1


def _auto_levels(solution: BubbleSolution, values: np.ndarray, count: int, cell_height: float):
    """Equispaced levels between the observed extremes, skipping levels that
    sit within one cell-height of a bubble's own streamfunction constant."""
    vmin = float(values.min())
    vmax = float(values.max())
    if not vmax > vmin:
        return []
    raw = np.linspace(vmin, vmax, count + 2)[1:-1]
    slit_values = [
        solution.scale_factor
        * solution.comoving_factor
        * float(np.mean(solution.horizontal_map.boundary_values[
            solution.horizontal_map.sampling.block(c)].imag))
        for c in solution.problem.bubble_components
    ]
    kept = [
        lv
        for lv in raw
        if all(abs(lv - sv) > cell_height for sv in slit_values)
    ]
    return kept


def streamlines(
    solution: BubbleSolution,
    grid_resolution: int = 400,
    levels=20,
    margin: float = 0.02,
    window: tuple[float, float, float, float] | None = None,
) -> list[Streamline]:
    """Extract co-moving-frame streamlines as physical-plane polylines.

    levels is either an explicit list of streamfunction values or a count
    for the automatic equispaced rule.  margin masks grid points closer
    than that to the domain boundary and should exceed one grid cell.
    """
    if margin <= 0:
        raise ValueError("margin must be positive")
    if grid_resolution < 2:
        raise ValueError("grid_resolution must be at least 2")
    axes = np.linspace(-1.0, 1.0, grid_resolution)
    step = axes[1] - axes[0]
    gx, gy = np.meshgrid(axes, axes)  # field[row, col] at x=axes[col], y=axes[row]
    pts = (gx + 1j * gy).ravel()
    mask = interior_mask(solution.problem.domain, pts, margin)
    if solution.problem.geometry is Geometry.FREE_SPACE:
        mask &= np.abs(pts - solution.problem.alpha) > POLE_CLEARANCE
    if not mask.any():
        raise EmptyGrid(f"margin {margin} leaves no interior grid points")
    field = np.full(pts.shape, np.nan)
    field[mask] = comoving_streamfunction(solution, pts[mask])
    field = field.reshape(grid_resolution, grid_resolution)
    mask2 = mask.reshape(grid_resolution, grid_resolution)

    if isinstance(levels, (int, np.integer)):
        masked_vals = field[mask2]
        span = float(masked_vals.max() - masked_vals.min())
        cell_height = span / grid_resolution
        level_list = _auto_levels(solution, masked_vals, int(levels), cell_height)
    else:
        level_list = [float(v) for v in levels]

    if window is None:
        window = default_window(solution)
    x0, x1, y0, y1 = window

    polylines: list[tuple[float, np.ndarray]] = []
    for level in level_list:
        for contour in measure.find_contours(field, level, mask=mask2):
            verts = (-1.0 + contour[:, 1] * step) + 1j * (-1.0 + contour[:, 0] * step)
            clear = (
                np.abs(verts - solution.problem.alpha) > POLE_CLEARANCE
                if solution.problem.geometry is Geometry.FREE_SPACE
                else np.ones(len(verts), dtype=bool)
            )
            for run in _split_runs(clear):
                polylines.append((level, verts[run]))
    if not polylines:
        return []

    flat = np.concatenate([v for _, v in polylines])
    z_flat = eval_physical(solution, flat)
    out: list[Streamline] = []
    pos = 0
    for level, verts in polylines:
        zv = z_flat[pos : pos + len(verts)]
        pos += len(verts)
        keep = (
            (zv.real >= x0)
            & (zv.real <= x1)
            & (zv.imag >= y0)
            & (zv.imag <= y1)
        )
        for run in _split_runs(keep):
            out.append(Streamline(level=level, zeta=verts[run], z=zv[run]))
    return out
