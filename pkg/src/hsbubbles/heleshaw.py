"""Physical bubble solutions composed from two canonical slit maps.

A steady bubble assembly translating with speed U > 1 through fluid of unit
far-field speed is described by two complex potentials: the fixed-frame
potential, whose bubble boundaries are vertical slits, and the co-moving
potential, whose bubble boundaries are horizontal slits.  Both are computed
as canonical slit maps of the same circular preimage domain; the co-moving
potential is (1 - U) times the canonical horizontal-slit map, the factor
coming from its far-field behavior (1 - U) z.  The physical map is

    z(zeta) = (W(zeta) - T(zeta)) / U,

whose images of the circles are the bubble boundaries.  Free space has
m + 1 bubbles (the unit circle included); in the half-plane and channel the
unit circle maps to the walls and the m inner circles to bubbles.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .bie import GmresSettings
from .domain import CircularDomain, discretize
from .errors import BadIndex, ScaleNotAllowed, SelfIntersectionWarning
from .kernels import SlitAngles, release_operator_cache
from .slitmaps import Geometry, SlitMap, _solve_map, eval_map


@dataclass(frozen=True)
class BubbleProblem:
    """One bubble configuration to solve.

    scale_target, when given, is (bubble index, target area); it is applied
    after the solve and is not available in the channel, where rescaling
    would change the wall separation.
    """

    geometry: Geometry
    domain: CircularDomain
    speed: float
    alpha: complex
    n: int
    scale_target: tuple[int, float] | None = None

    def __post_init__(self):
        if self.speed <= 1.0:
            raise ValueError(f"bubble speed must exceed 1, got {self.speed}")
        if self.geometry is not Geometry.FREE_SPACE and self.n % 4:
            raise BadN(
                f"the half-plane and channel geometries need n divisible by 4, got {self.n}"
            )
        if self.scale_target is not None:
            if self.geometry is Geometry.CHANNEL:
                raise ScaleNotAllowed(
                    "rescaling would change the channel width; scale targets "
                    "are only available in free space and the half-plane"
                )
            index, area = self.scale_target
            if not 0 <= index < self.num_bubbles:
                raise BadIndex(
                    f"scale bubble index {index} out of range for "
                    f"{self.num_bubbles} bubbles"
                )
            if area <= 0:
                raise ValueError("target area must be positive")

    @property
    def num_bubbles(self) -> int:
        if self.geometry is Geometry.FREE_SPACE:
            return self.domain.connectivity
        return self.domain.m

    @property
    def bubble_components(self) -> tuple[int, ...]:
        if self.geometry is Geometry.FREE_SPACE:
            return tuple(range(self.domain.connectivity))
        return tuple(range(1, self.domain.connectivity))


@dataclass(frozen=True)
class ResidualReport:
    """How well a solution satisfies the boundary conditions it encodes.

    Slit deviations are standard deviations over each bubble of the
    quantity that should be constant there; wall_residual is the maximum
    deviation of Im z from the wall values on the unit circle (None in
    free space).  Channel-end nodes, which map to infinity, are excluded.
    """

    std_re_w: tuple[float, ...]
    std_im_tau: tuple[float, ...]
    wall_residual: float | None
    constants_deviation_vertical: tuple[float, ...]
    constants_deviation_horizontal: tuple[float, ...]
    iterations_vertical: int
    iterations_horizontal: int
    residual_vertical: float
    residual_horizontal: float
    contained: bool
    self_intersecting: tuple[bool, ...]


@dataclass(frozen=True)
class BubbleSolution:
    """Solved bubble assembly: both maps, physical curves, areas, diagnostics.

    boundary_all holds the scaled physical map on every component (walls
    included); bubble_curves are the rows of the bubble components.
    """

    problem: BubbleProblem
    vertical_map: SlitMap
    horizontal_map: SlitMap
    comoving_factor: float
    boundary_all: np.ndarray = field(repr=False)
    bubble_curves: tuple[np.ndarray, ...] = field(repr=False)
    areas: np.ndarray
    scale_factor: float
    diagnostics: ResidualReport

    @property
    def num_bubbles(self) -> int:
        return len(self.bubble_curves)


def _map_angles(geometry: Geometry, connectivity: int) -> tuple[SlitAngles, SlitAngles]:
    """Slit angles of the fixed-frame (vertical) and co-moving (horizontal)
    maps: bubbles are vertical slits in the fixed frame, the unit circle is
    a wall (angle 0) except in free space where it is a bubble too."""
    vertical = list(SlitAngles.vertical(connectivity).angles)
    if geometry is not Geometry.FREE_SPACE:
        vertical[0] = 0.0
    return SlitAngles(tuple(vertical)), SlitAngles.horizontal(connectivity)


def curve_area(curve: np.ndarray) -> float:
    """Area enclosed by a closed curve sampled at equispaced parameters.

    Green's theorem with the tangent computed by Fourier differentiation;
    positive for the clockwise traversal produced by the bubble maps.
    """
    n = curve.shape[0]
    k = np.fft.fftfreq(n, d=1.0 / n)
    ik = 1j * k
    if n % 2 == 0:
        ik[n // 2] = 0.0
    dcurve = np.fft.ifft(ik * np.fft.fft(curve))
    integrand = np.conj(curve) * dcurve
    return float(np.real(0.5j * (2.0 * np.pi / n) * integrand.sum()))


def bubble_areas(solution: BubbleSolution) -> np.ndarray:
    """Areas of all bubbles, recomputed from the stored boundary curves."""
    return np.array([curve_area(c) for c in solution.bubble_curves])


def _segment_self_intersects(curve: np.ndarray) -> bool:
    """Proper self-intersection test over all non-adjacent segment pairs."""
    pts = np.column_stack([curve.real, curve.imag])
    nxt = np.roll(pts, -1, axis=0)
    n = len(pts)

    def cross(o, a, b):
        return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (
            a[..., 1] - o[..., 1]
        ) * (b[..., 0] - o[..., 0])

    a = pts[:, None, :]
    b = nxt[:, None, :]
    c = pts[None, :, :]
    d = nxt[None, :, :]
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)
    i = np.arange(n)
    adjacent = (np.abs(i[:, None] - i[None, :]) <= 1) | (
        np.abs(i[:, None] - i[None, :]) == n - 1
    )
    return bool(np.any(proper & ~adjacent))


def _channel_wall_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Node indices on the upper and lower halves of the unit circle,
    excluding the two end nodes that map to infinity."""
    upper = np.arange(1, n // 2)
    lower = np.arange(n // 2 + 1, n)
    return upper, lower


def residual_report(solution: "BubbleSolution") -> ResidualReport:
    """Boundary-condition residuals and solver statistics for a solution."""
    return _build_report(
        solution.problem.geometry,
        vertical=solution.vertical_map,
        horizontal=solution.horizontal_map,
        boundary_all=solution.boundary_all,
        bubble_curves=solution.bubble_curves,
        scale=solution.scale_factor,
        comoving=solution.comoving_factor,
    )


def _build_report(
    geometry: Geometry,
    vertical: SlitMap,
    horizontal: SlitMap,
    boundary_all: np.ndarray,
    bubble_curves: tuple[np.ndarray, ...],
    scale: float,
    comoving: float,
) -> ResidualReport:
    components = (
        tuple(range(vertical.sampling.connectivity))
        if geometry is Geometry.FREE_SPACE
        else tuple(range(1, vertical.sampling.connectivity))
    )
    n = vertical.sampling.n
    std_w = []
    std_tau = []
    for c in components:
        sl = vertical.sampling.block(c)
        std_w.append(float(np.std(scale * vertical.boundary_values[sl].real)))
        std_tau.append(
            float(np.std(scale * comoving * horizontal.boundary_values[sl].imag))
        )
    wall = None
    contained = True
    if geometry is Geometry.CHANNEL:
        z0 = boundary_all[0]
        upper, lower = _channel_wall_indices(n)
        wall = max(
            float(np.max(np.abs(z0[upper].imag - 1.0))),
            float(np.max(np.abs(z0[lower].imag + 1.0))),
        )
        contained = all(np.max(np.abs(c.imag)) < 1.0 for c in bubble_curves)
    elif geometry is Geometry.HALF_PLANE:
        z0 = boundary_all[0]
        finite = np.isfinite(z0.imag)
        wall = float(np.max(np.abs(z0.imag[finite])))
        contained = all(np.min(c.imag) > 0.0 for c in bubble_curves)
    selfx = tuple(_segment_self_intersects(c) for c in bubble_curves)
    return ResidualReport(
        std_re_w=tuple(std_w),
        std_im_tau=tuple(std_tau),
        wall_residual=wall,
        constants_deviation_vertical=vertical.bie.constants_deviation,
        constants_deviation_horizontal=horizontal.bie.constants_deviation,
        iterations_vertical=vertical.bie.iterations,
        iterations_horizontal=horizontal.bie.iterations,
        residual_vertical=vertical.bie.residual_norm,
        residual_horizontal=horizontal.bie.residual_norm,
        contained=contained,
        self_intersecting=selfx,
    )


def solve_bubbles(
    problem: BubbleProblem,
    settings: GmresSettings | None = None,
    comoving_factor: float | None = None,
) -> BubbleSolution:
    """Solve both canonical maps and compose the physical bubble solution.

    comoving_factor overrides the physical factor 1 - U applied to the
    horizontal-slit map; it exists for falsification tests only.
    """
    geometry = problem.geometry
    sampling = discretize(problem.domain, problem.n)
    angles_v, angles_h = _map_angles(geometry, problem.domain.connectivity)
    vertical = _solve_map(geometry, sampling, problem.alpha, angles_v, settings)
    release_operator_cache(vertical.ctx)
    horizontal = _solve_map(geometry, sampling, problem.alpha, angles_h, settings)
    release_operator_cache(horizontal.ctx)
    factor = (1.0 - problem.speed) if comoving_factor is None else float(comoving_factor)
    with np.errstate(invalid="ignore"):
        z_flat = (vertical.boundary_values - factor * horizontal.boundary_values) / problem.speed
    z_all = z_flat.reshape(sampling.connectivity, problem.n)

    scale = 1.0
    if problem.scale_target is not None:
        index, target = problem.scale_target
        comp = problem.bubble_components[index]
        area = curve_area(z_all[comp])
        if area <= 0:
            raise ValueError(
                f"cannot rescale: bubble {index} has non-positive area {area:.3e} "
                "(degenerate solution)"
            )
        scale = float(np.sqrt(target / area))
        z_all = z_all * scale
    z_all.flags.writeable = False
    curves = tuple(z_all[c].copy() for c in problem.bubble_components)
    for c in curves:
        c.flags.writeable = False
    areas = np.array([curve_area(c) for c in curves])
    diagnostics = _build_report(
        geometry,
        vertical=vertical,
        horizontal=horizontal,
        boundary_all=z_all,
        bubble_curves=curves,
        scale=scale,
        comoving=factor,
    )
    if any(diagnostics.self_intersecting):
        bad = [i for i, x in enumerate(diagnostics.self_intersecting) if x]
        warnings.warn(
            f"bubble boundary self-intersects for bubble index(es) {bad}; "
            "the parameters do not describe a physical configuration",
            SelfIntersectionWarning,
            stacklevel=2,
        )
    return BubbleSolution(
        problem=problem,
        vertical_map=vertical,
        horizontal_map=horizontal,
        comoving_factor=factor,
        boundary_all=z_all,
        bubble_curves=curves,
        areas=areas,
        scale_factor=scale,
        diagnostics=diagnostics,
    )


def rescale_to_area(solution: BubbleSolution, bubble_index: int, target_area: float) -> BubbleSolution:
    """Rescale the whole picture so one bubble has the target area.

    Multiplying the physical map by a positive constant keeps the shapes
    and moves the areas by the square of the factor; the channel geometry
    forbids this because it would change the wall separation.
    """
    if solution.problem.geometry is Geometry.CHANNEL:
        raise ScaleNotAllowed(
            "rescaling would change the channel width; scale targets are "
            "only available in free space and the half-plane"
        )
    if not 0 <= bubble_index < solution.num_bubbles:
        raise BadIndex(
            f"bubble index {bubble_index} out of range for {solution.num_bubbles} bubbles"
        )
    if target_area <= 0:
        raise ValueError("target area must be positive")
    current = float(solution.areas[bubble_index])
    if current <= 0:
        raise ValueError(
            f"cannot rescale: bubble {bubble_index} has non-positive area "
            f"{current:.3e} (degenerate solution)"
        )
    s = float(np.sqrt(target_area / current))
    if s == 1.0:
        return solution
    z_all = solution.boundary_all * s
    z_all.flags.writeable = False
    curves = tuple(c * s for c in solution.bubble_curves)
    for c in curves:
        c.flags.writeable = False
    scale = solution.scale_factor * s
    diagnostics = _build_report(
        solution.problem.geometry,
        vertical=solution.vertical_map,
        horizontal=solution.horizontal_map,
        boundary_all=z_all,
        bubble_curves=curves,
        scale=scale,
        comoving=solution.comoving_factor,
    )
    return replace(
        solution,
        boundary_all=z_all,
        bubble_curves=curves,
        areas=solution.areas * s * s,
        scale_factor=scale,
        diagnostics=diagnostics,
    )


def eval_physical(solution: BubbleSolution, points) -> np.ndarray:
    """Physical map z at strictly interior preimage points, scale included."""
    w = eval_map(solution.vertical_map, points)
    tau = solution.comoving_factor * eval_map(solution.horizontal_map, points)
    return solution.scale_factor * (w - tau) / solution.problem.speed


def comoving_streamfunction(solution: BubbleSolution, points) -> np.ndarray:
    """Streamfunction of the co-moving frame (scaled with the solution)."""
    tau = eval_map(solution.horizontal_map, points)
    return solution.scale_factor * solution.comoving_factor * np.imag(tau)
