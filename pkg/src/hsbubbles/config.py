"""Run and bench configurations: JSON parsing, validation, canonical dump.

Configs are plain JSON with the key names used throughout the CLI docs;
every module precondition is checked at parse time so a bad file fails
with a field-precise message before any computation starts.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .bie import GmresSettings
from .domain import Location, locate, make_domain
from .errors import HsBubblesError
from .heleshaw import BubbleProblem
from .slitmaps import Geometry

GEOMETRIES = tuple(g.value for g in Geometry)
FORMATS = ("csv", "json", "svg")


class ConfigError(Exception):
    """A configuration problem, carrying a machine-readable code and the
    offending field path."""

    def __init__(self, message: str, field: str = "", code: str = "bad_config"):
        self.field = field
        self.code = code
        super().__init__(f"{field}: {message}" if field else message)


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-14
    max_iterations: int = 100

    def to_settings(self) -> GmresSettings:
        return GmresSettings(tol=self.tol, max_iterations=self.max_iterations)


@dataclass(frozen=True)
class StreamlinesConfig:
    grid: int = 400
    count: int = 20
    margin: float = 0.02


@dataclass(frozen=True)
class OutputsConfig:
    directory: str = "out"
    formats: tuple[str, ...] = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    geometry: str
    circles: tuple[tuple[complex, float], ...]
    speed: float
    alpha: complex
    n: int
    scale: tuple[int, float] | None = None
    streamlines: StreamlinesConfig | None = None
    outputs: OutputsConfig = OutputsConfig()
    solver: SolverConfig = SolverConfig()
    name: str | None = None
    note: str | None = None

    def to_problem(self) -> BubbleProblem:
        domain = make_domain([c for c, _ in self.circles], [r for _, r in self.circles])
        return BubbleProblem(
            geometry=Geometry(self.geometry),
            domain=domain,
            speed=self.speed,
            alpha=self.alpha,
            n=self.n,
            scale_target=self.scale,
        )


@dataclass(frozen=True)
class BenchConfig:
    base: RunConfig
    n_values: tuple[int, ...]
    repetitions: int


def _expect(data, key, kind, path, required=True, default=None):
    if key not in data:
        if required:
            raise ConfigError(f"missing required key '{key}'", field=path or key)
        return default
    value = data[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ConfigError(
            f"expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}",
            field=f"{path}.{key}" if path else key,
        )
    return value


def _complex_pair(value, path) -> complex:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise ConfigError("expected a [re, im] pair of numbers", field=path)
    return complex(value[0], value[1])


def _unknown_keys(data, allowed, path):
    extra = set(data) - set(allowed)
    if extra:
        raise ConfigError(
            f"unknown key(s) {sorted(extra)}", field=path or "config"
        )


def parse_run_config(data: dict, path: str = "") -> RunConfig:
    """Validate a config dictionary and return a RunConfig.

    All module preconditions are checked here: geometry name, circle
    validity (strictly inside the unit disk, pairwise disjoint), speed > 1,
    alpha strictly interior, node-count divisibility, scale availability,
    known output formats, positive solver tolerance.
    """
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object", field=path or "config")
    _unknown_keys(
        data,
        ("geometry", "circles", "U", "alpha", "n", "scale", "streamlines",
         "outputs", "solver", "name", "note"),
        path,
    )
    geometry = _expect(data, "geometry", str, path)
    if geometry not in GEOMETRIES:
        raise ConfigError(
            f"unknown geometry '{geometry}', expected one of {list(GEOMETRIES)}",
            field=_join(path, "geometry"),
        )
    circles_raw = _expect(data, "circles", list, path)
    circles = []
    for i, item in enumerate(circles_raw):
        cpath = _join(path, f"circles[{i}]")
        if not isinstance(item, dict):
            raise ConfigError("each circle must be an object", field=cpath)
        _unknown_keys(item, ("center", "radius"), cpath)
        center = _complex_pair(
            _expect(item, "center", list, cpath), f"{cpath}.center"
        )
        radius = _expect(item, "radius", float, cpath)
        circles.append((center, radius))
    speed = _expect(data, "U", float, path)
    if speed <= 1.0:
        raise ConfigError(f"U must exceed 1, got {speed}", field=_join(path, "U"))
    alpha = _complex_pair(_expect(data, "alpha", list, path), _join(path, "alpha"))
    n = _expect(data, "n", int, path)
    if n < 8 or n % 2:
        raise ConfigError(f"n must be even and at least 8, got {n}", field=_join(path, "n"))
    if geometry != Geometry.FREE_SPACE.value and n % 4:
        raise ConfigError(
            f"n must be divisible by 4 for geometry '{geometry}', got {n}",
            field=_join(path, "n"),
        )

    try:
        domain = make_domain([c for c, _ in circles], [r for _, r in circles])
    except HsBubblesError as exc:
        raise ConfigError(str(exc), field=_join(path, "circles")) from exc
    if locate(domain, alpha, 0.0) is not Location.INSIDE:
        raise ConfigError(
            f"alpha {alpha} is not strictly inside the domain",
            field=_join(path, "alpha"),
        )

    scale = None
    if "scale" in data and data["scale"] is not None:
        spath = _join(path, "scale")
        sdata = data["scale"]
        if not isinstance(sdata, dict):
            raise ConfigError("scale must be an object", field=spath)
        _unknown_keys(sdata, ("bubble", "area"), spath)
        if geometry == Geometry.CHANNEL.value:
            raise ConfigError(
                "rescaling is not available in the channel geometry",
                field=spath,
                code="scale_not_allowed",
            )
        bubble = _expect(sdata, "bubble", int, spath)
        area = _expect(sdata, "area", float, spath)
        num_bubbles = len(circles) + (1 if geometry == Geometry.FREE_SPACE.value else 0)
        if not 0 <= bubble < num_bubbles:
            raise ConfigError(
                f"bubble index {bubble} out of range for {num_bubbles} bubbles",
                field=f"{spath}.bubble",
            )
        if area <= 0:
            raise ConfigError("target area must be positive", field=f"{spath}.area")
        scale = (bubble, area)

    stream = None
    if "streamlines" in data and data["streamlines"] is not None:
        lpath = _join(path, "streamlines")
        ldata = data["streamlines"]
        if not isinstance(ldata, dict):
            raise ConfigError("streamlines must be an object", field=lpath)
        _unknown_keys(ldata, ("grid", "count", "margin"), lpath)
        grid = _expect(ldata, "grid", int, lpath, required=False, default=400)
        count = _expect(ldata, "count", int, lpath, required=False, default=20)
        m = _expect(ldata, "margin", float, lpath, required=False, default=0.02)
        if grid < 2:
            raise ConfigError("grid must be at least 2", field=f"{lpath}.grid")
        if count < 1:
            raise ConfigError("count must be at least 1", field=f"{lpath}.count")
        if m <= 0:
            raise ConfigError("margin must be positive", field=f"{lpath}.margin")
        stream = StreamlinesConfig(grid=grid, count=count, margin=m)

    opath = _join(path, "outputs")
    odata = data.get("outputs", {})
    if not isinstance(odata, dict):
        raise ConfigError("outputs must be an object", field=opath)
    _unknown_keys(odata, ("directory", "formats"), opath)
    directory = _expect(odata, "directory", str, opath, required=False, default="out")
    formats_raw = odata.get("formats", ["csv", "json"])
    if not isinstance(formats_raw, list) or not all(isinstance(f, str) for f in formats_raw):
        raise ConfigError("formats must be a list of strings", field=f"{opath}.formats")
    for f in formats_raw:
        if f not in FORMATS:
            raise ConfigError(
                f"unknown format '{f}', expected subset of {list(FORMATS)}",
                field=f"{opath}.formats",
            )
    outputs = OutputsConfig(directory=directory, formats=tuple(formats_raw))

    vpath = _join(path, "solver")
    vdata = data.get("solver", {})
    if not isinstance(vdata, dict):
        raise ConfigError("solver must be an object", field=vpath)
    _unknown_keys(vdata, ("tol", "max_iterations"), vpath)
    tol = _expect(vdata, "tol", float, vpath, required=False, default=1e-14)
    maxit = _expect(vdata, "max_iterations", int, vpath, required=False, default=100)
    if tol <= 0:
        raise ConfigError("tol must be positive", field=f"{vpath}.tol")
    if maxit < 1:
        raise ConfigError("max_iterations must be at least 1", field=f"{vpath}.max_iterations")
    solver = SolverConfig(tol=tol, max_iterations=maxit)

    name = _expect(data, "name", str, path, required=False)
    note = _expect(data, "note", str, path, required=False)
    return RunConfig(
        geometry=geometry,
        circles=tuple(circles),
        speed=speed,
        alpha=alpha,
        n=n,
        scale=scale,
        streamlines=stream,
        outputs=outputs,
        solver=solver,
        name=name,
        note=note,
    )


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def load_run_config(filename: str) -> RunConfig:
    with open(filename) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"invalid JSON in {filename} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    return parse_run_config(data)


def parse_bench_config(data: dict) -> BenchConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")
    _unknown_keys(data, ("base", "n_values", "repetitions", "name", "note"), "")
    base_data = data.get("base")
    if not isinstance(base_data, dict):
        raise ConfigError("missing or invalid 'base' run config", field="base")
    base = parse_run_config(base_data, path="base")
    n_values = data.get("n_values")
    if (
        not isinstance(n_values, list)
        or not n_values
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in n_values)
    ):
        raise ConfigError("n_values must be a nonempty list of integers", field="n_values")
    if sorted(n_values) != n_values:
        raise ConfigError("n_values must be sorted ascending", field="n_values")
    for v in n_values:
        if v < 8 or v % 4:
            raise ConfigError(
                f"each n must be divisible by 4 and at least 8, got {v}", field="n_values"
            )
    reps = _expect(data, "repetitions", int, "")
    if reps < 1:
        raise ConfigError("repetitions must be at least 1", field="repetitions")
    return BenchConfig(base=base, n_values=tuple(n_values), repetitions=reps)


def load_bench_config(filename: str) -> BenchConfig:
    with open(filename) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"invalid JSON in {filename} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    return parse_bench_config(data)


def dump_run_config(config: RunConfig) -> str:
    """Canonical JSON for a RunConfig; parsing it back gives an equal config."""
    data: dict = {
        "geometry": config.geometry,
        "circles": [
            {"center": [c.real, c.imag], "radius": r} for c, r in config.circles
        ],
        "U": config.speed,
        "alpha": [config.alpha.real, config.alpha.imag],
        "n": config.n,
    }
    if config.scale is not None:
        data["scale"] = {"bubble": config.scale[0], "area": config.scale[1]}
    if config.streamlines is not None:
        data["streamlines"] = asdict(config.streamlines)
    data["outputs"] = {
        "directory": config.outputs.directory,
        "formats": list(config.outputs.formats),
    }
    data["solver"] = asdict(config.solver)
    if config.name is not None:
        data["name"] = config.name
    if config.note is not None:
        data["note"] = config.note
    return json.dumps(data, indent=2)
