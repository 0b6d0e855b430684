"""File emitters: boundary/streamline CSV, summary JSON, SVG plots.

All floats are written with 17 significant digits so repeated runs of the
same configuration produce byte-identical CSV files.
"""

from __future__ import annotations

import json
import os
from xml.sax.saxutils import quoteattr

import numpy as np

from .heleshaw import BubbleSolution
from .slitmaps import Geometry
from .streamlines import Streamline

SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_boundary_csv(path: str, solution: BubbleSolution) -> None:
    t = solution.vertical_map.sampling.t
    lines = ["bubble_index,t,x,y"]
    for i, curve in enumerate(solution.bubble_curves):
        for tp, zp in zip(t, curve):
            lines.append(f"{i},{_fmt(tp)},{_fmt(zp.real)},{_fmt(zp.imag)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_streamlines_csv(path: str, lines_list: list[Streamline]) -> None:
    rows = ["polyline_id,x,y,level"]
    for pid, sl in enumerate(lines_list):
        for zp in sl.z:
            rows.append(f"{pid},{_fmt(zp.real)},{_fmt(zp.imag)},{_fmt(sl.level)}")
    with open(path, "w") as fh:
        fh.write("\n".join(rows) + "\n")


def summary_dict(solution: BubbleSolution, wall_clock_ms: float) -> dict:
    d = solution.diagnostics
    p = solution.problem
    return {
        "schema": SCHEMA_VERSION,
        "geometry": p.geometry.value,
        "U": p.speed,
        "n": p.n,
        "alpha": [p.alpha.real, p.alpha.imag],
        "num_bubbles": solution.num_bubbles,
        "areas": [float(a) for a in solution.areas],
        "scale_factor": solution.scale_factor,
        "maps": {
            "vertical": {
                "h": list(solution.vertical_map.bie.constants),
                "h_deviation": list(d.constants_deviation_vertical),
                "gmres_iterations": d.iterations_vertical,
                "residual": d.residual_vertical,
            },
            "horizontal": {
                "h": list(solution.horizontal_map.bie.constants),
                "h_deviation": list(d.constants_deviation_horizontal),
                "gmres_iterations": d.iterations_horizontal,
                "residual": d.residual_horizontal,
            },
        },
        "diagnostics": {
            "std_re_w": list(d.std_re_w),
            "std_im_tau": list(d.std_im_tau),
            "wall_residual": d.wall_residual,
            "contained": d.contained,
            "self_intersecting": list(d.self_intersecting),
        },
        "wall_clock_ms": wall_clock_ms,
    }


def write_summary_json(path: str, solution: BubbleSolution, wall_clock_ms: float) -> None:
    with open(path, "w") as fh:
        json.dump(summary_dict(solution, wall_clock_ms), fh, indent=2)
        fh.write("\n")


def _path_d(points: np.ndarray, close: bool) -> str:
    # y is negated: SVG's y axis points down
    coords = [f"{_fmt(p.real)},{_fmt(-p.imag)}" for p in points]
    d = "M " + " L ".join(coords)
    return d + " Z" if close else d


def write_svg(
    path: str,
    solution: BubbleSolution,
    lines_list: list[Streamline] | None = None,
    width: int = 800,
) -> None:
    """Plot bubbles (filled paths) and streamlines (stroked paths).

    The viewport is the bubble bounding box padded by 10 percent; walls are
    drawn for the half-plane and channel geometries.
    """
    curves = solution.bubble_curves
    if curves:
        xs = np.concatenate([c.real for c in curves])
        ys = np.concatenate([c.imag for c in curves])
    elif lines_list:
        xs = np.concatenate([sl.z.real for sl in lines_list])
        ys = np.concatenate([sl.z.imag for sl in lines_list])
    else:
        xs = np.array([-1.0, 1.0])
        ys = np.array([-1.0, 1.0])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    geometry = solution.problem.geometry
    if geometry is Geometry.CHANNEL:
        y0, y1 = -1.0, 1.0
    elif geometry is Geometry.HALF_PLANE:
        y0 = 0.0
    pad_x = 0.1 * max(x1 - x0, 1e-9)
    pad_y = 0.1 * max(y1 - y0, 1e-9)
    x0, x1 = x0 - pad_x, x1 + pad_x
    y0, y1 = y0 - pad_y, y1 + pad_y
    w = x1 - x0
    h = y1 - y0
    height = max(1, round(width * h / w))
    stroke = w / 400.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox={quoteattr(f"{_fmt(x0)} {_fmt(-y1)} {_fmt(w)} {_fmt(h)}")}>'
    ]
    if geometry in (Geometry.CHANNEL, Geometry.HALF_PLANE):
        walls = [1.0, -1.0] if geometry is Geometry.CHANNEL else [0.0]
        for yw in walls:
            parts.append(
                f'<line x1="{_fmt(x0)}" y1="{_fmt(-yw)}" x2="{_fmt(x1)}" y2="{_fmt(-yw)}" '
                f'stroke="#222222" stroke-width="{_fmt(2 * stroke)}"/>'
            )
    for sl in lines_list or []:
        parts.append(
            f'<path d={quoteattr(_path_d(sl.z, close=False))} fill="none" '
            f'stroke="#888888" stroke-width="{_fmt(stroke)}"/>'
        )
    for curve in curves:
        parts.append(
            f'<path d={quoteattr(_path_d(curve, close=True))} fill="#9ecae1" '
            f'stroke="#1b4a6b" stroke-width="{_fmt(1.5 * stroke)}"/>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def write_bench_csv(path: str, rows: list[dict]) -> None:
    header = (
        "n,time_vertical_s,time_horizontal_s,iterations_vertical,"
        "iterations_horizontal,residual_vertical,residual_horizontal"
    )
    lines = [header]
    for r in rows:
        lines.append(
            f"{r['n']},{_fmt(r['time_vertical_s'])},{_fmt(r['time_horizontal_s'])},"
            f"{r['iterations_vertical']},{r['iterations_horizontal']},"
            f"{_fmt(r['residual_vertical'])},{_fmt(r['residual_horizontal'])}"
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def format_bench_table(rows: list[dict]) -> str:
    head = f"{'n':>6} {'t_vert[s]':>12} {'t_horiz[s]':>12} {'it_v':>5} {'it_h':>5} {'res_v':>10} {'res_h':>10}"
    out = [head, "-" * len(head)]
    for r in rows:
        out.append(
            f"{r['n']:>6} {r['time_vertical_s']:>12.4f} {r['time_horizontal_s']:>12.4f} "
            f"{r['iterations_vertical']:>5} {r['iterations_horizontal']:>5} "
            f"{r['residual_vertical']:>10.2e} {r['residual_horizontal']:>10.2e}"
        )
    return "\n".join(out)


def ensure_directory(path: str) -> None:
    os.makedirs(path, exist_ok=True)
