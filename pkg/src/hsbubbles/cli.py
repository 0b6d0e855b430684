"""Command-line front end: solve a configuration, benchmark, or validate.

Exit codes: 0 success, 1 validation-suite failure, 2 solver non-convergence,
3 bad input (unknown subcommand, unreadable or invalid configuration).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import replace
from statistics import median

from . import __version__
from .config import (
    BenchConfig,
    ConfigError,
    RunConfig,
    dump_run_config,
    load_bench_config,
    load_run_config,
)
from .domain import discretize
from .errors import HsBubblesError
from .heleshaw import _map_angles, solve_bubbles
from .outputs import (
    ensure_directory,
    format_bench_table,
    summary_dict,
    write_bench_csv,
    write_boundary_csv,
    write_streamlines_csv,
    write_summary_json,
    write_svg,
)
from .slitmaps import Geometry, _solve_map
from .streamlines import streamlines

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NONCONVERGENCE = 2
EXIT_BAD_INPUT = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("bad_input", message)
        raise SystemExit(EXIT_BAD_INPUT)


def _emit_error(code: str, message: str, field: str = "") -> None:
    payload = {"error": {"code": code, "message": message}}
    if field:
        payload["error"]["field"] = field
    print(json.dumps(payload), file=sys.stderr)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="hsbubbles",
        description=(
            "Steady Hele-Shaw bubble shapes in free space, the upper half-plane, "
            "or an infinite channel, via a boundary integral equation for two "
            "conformal maps."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command")

    p_solve = sub.add_parser("solve", help="solve one configuration and write outputs")
    p_solve.add_argument("config", help="path to a JSON run configuration")
    p_solve.add_argument("--out-dir", help="override the output directory")
    p_solve.add_argument(
        "--dump-config",
        action="store_true",
        help="echo the parsed configuration as canonical JSON and exit",
    )
    p_solve.add_argument("--quiet", action="store_true", help="suppress the summary printout")

    p_bench = sub.add_parser("bench", help="time both map solves over a range of n")
    p_bench.add_argument("config", help="path to a JSON bench configuration")
    p_bench.add_argument("--out-dir", help="override the output directory")
    p_bench.add_argument(
        "--dump-config",
        action="store_true",
        help="echo the parsed base configuration as canonical JSON and exit",
    )
    p_bench.add_argument("--quiet", action="store_true", help="suppress the table printout")

    p_val = sub.add_parser("validate", help="run the built-in falsification suite")
    p_val.add_argument("--quiet", action="store_true", help="print failures only")
    p_val.add_argument(
        "--debug-comoving-factor",
        type=float,
        default=None,
        help=argparse.SUPPRESS,  # inject a wrong co-moving scaling; the suite must fail
    )
    return parser


def run_solve(config: RunConfig, quiet: bool = False) -> int:
    started = time.perf_counter()
    problem = config.to_problem()
    settings = config.solver.to_settings()
    solution = solve_bubbles(problem, settings=settings)
    lines = None
    if config.streamlines is not None:
        lines = streamlines(
            solution,
            grid_resolution=config.streamlines.grid,
            levels=config.streamlines.count,
            margin=config.streamlines.margin,
        )
    elapsed_ms = 1000.0 * (time.perf_counter() - started)

    out_dir = config.outputs.directory
    ensure_directory(out_dir)
    formats = config.outputs.formats
    if "csv" in formats:
        write_boundary_csv(os.path.join(out_dir, "boundary.csv"), solution)
        if lines is not None:
            write_streamlines_csv(os.path.join(out_dir, "streamlines.csv"), lines)
    if "json" in formats:
        write_summary_json(os.path.join(out_dir, "summary.json"), solution, elapsed_ms)
    if "svg" in formats:
        write_svg(os.path.join(out_dir, "plot.svg"), solution, lines)

    diag = solution.diagnostics
    converged = (
        solution.vertical_map.bie.converged and solution.horizontal_map.bie.converged
    )
    if not quiet:
        summary = summary_dict(solution, elapsed_ms)
        areas = ", ".join(f"{a:.12g}" for a in solution.areas)
        print(f"geometry: {config.geometry}, U = {config.speed}, n = {config.n}")
        print(f"bubbles: {solution.num_bubbles}, areas: [{areas}]")
        print(
            "gmres iterations (vertical/horizontal): "
            f"{diag.iterations_vertical}/{diag.iterations_horizontal}, "
            f"residuals {diag.residual_vertical:.2e}/{diag.residual_horizontal:.2e}"
        )
        if diag.wall_residual is not None:
            print(f"wall residual: {diag.wall_residual:.2e}")
        print(f"outputs in {out_dir} ({', '.join(formats)}); {elapsed_ms:.0f} ms")
        if not converged:
            print("WARNING: a map solve did not reach the GMRES tolerance")
        del summary
    if not converged:
        _emit_error(
            "non_convergence",
            "a map solve did not reach the GMRES tolerance; see summary diagnostics",
        )
        return EXIT_NONCONVERGENCE
    return EXIT_OK


def run_bench(config: BenchConfig, quiet: bool = False) -> int:
    base = config.base
    rows = []
    for n in config.n_values:
        run = replace(base, n=n)
        problem = run.to_problem()
        settings = run.solver.to_settings()
        geometry = problem.geometry
        angles_v, angles_h = _map_angles(geometry, problem.domain.connectivity)
        times_v, times_h = [], []
        maps = None
        for _ in range(config.repetitions):
            sampling = discretize(problem.domain, n)
            t0 = time.perf_counter()
            vertical = _solve_map(geometry, sampling, problem.alpha, angles_v, settings)
            t1 = time.perf_counter()
            horizontal = _solve_map(geometry, sampling, problem.alpha, angles_h, settings)
            t2 = time.perf_counter()
            times_v.append(t1 - t0)
            times_h.append(t2 - t1)
            maps = (vertical, horizontal)
        vertical, horizontal = maps
        rows.append(
            {
                "n": n,
                "time_vertical_s": median(times_v),
                "time_horizontal_s": median(times_h),
                "iterations_vertical": vertical.bie.iterations,
                "iterations_horizontal": horizontal.bie.iterations,
                "residual_vertical": vertical.bie.residual_norm,
                "residual_horizontal": horizontal.bie.residual_norm,
            }
        )
    out_dir = base.outputs.directory
    ensure_directory(out_dir)
    write_bench_csv(os.path.join(out_dir, "bench.csv"), rows)
    if not quiet:
        print(format_bench_table(rows))
        print(f"bench table written to {os.path.join(out_dir, 'bench.csv')}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses code 0 for --help/--version; map its errors to 3
        return int(exc.code) if exc.code in (0, EXIT_BAD_INPUT) else EXIT_BAD_INPUT
    if args.command is None:
        parser.print_usage(sys.stderr)
        _emit_error("bad_input", "a subcommand is required: solve, bench, or validate")
        return EXIT_BAD_INPUT

    try:
        if args.command == "solve":
            config = load_run_config(args.config)
            if args.out_dir:
                config = replace(config, outputs=replace(config.outputs, directory=args.out_dir))
            if args.dump_config:
                print(dump_run_config(config))
                return EXIT_OK
            return run_solve(config, quiet=args.quiet)
        if args.command == "bench":
            config = load_bench_config(args.config)
            if args.out_dir:
                config = replace(
                    config,
                    base=replace(
                        config.base, outputs=replace(config.base.outputs, directory=args.out_dir)
                    ),
                )
            if args.dump_config:
                print(dump_run_config(config.base))
                return EXIT_OK
            return run_bench(config, quiet=args.quiet)
        from .validate import run_validation

        return run_validation(
            comoving_factor=args.debug_comoving_factor, quiet=args.quiet
        )
    except ConfigError as exc:
        _emit_error(exc.code, str(exc), field=exc.field)
        return EXIT_BAD_INPUT
    except FileNotFoundError as exc:
        _emit_error("bad_input", f"cannot read {exc.filename}")
        return EXIT_BAD_INPUT
    except HsBubblesError as exc:
        _emit_error("error", str(exc))
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
