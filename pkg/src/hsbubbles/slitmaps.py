"""Canonical conformal maps from the circular domain onto slit domains.

Three targets are supported:

* free space with m+1 rectilinear slits, map with a simple pole of residue
  one at the base point alpha;
* the upper half-plane with m slits, the unit circle going to the real
  line through the Mobius map psi(z) = i(i+z)/(i-z);
* the infinite channel of width 2 with m slits, the unit circle going to
  the walls through psi(z) = (2/pi) log((1+z)/(1-z)), normalized so the
  map fixes i.

Each map is a closed-form part plus a correction (zeta - alpha) f(zeta)
where f solves the boundary integral equation for geometry-specific
boundary data.  Boundary values of the half-plane and channel psi on the
unit circle are evaluated analytically (real part (2/pi) ln|cot(t/2)| with
imaginary part exactly +-1 for the channel; cos t/(1 - sin t) with zero
imaginary part for the half-plane), which avoids cancellation near the
points that map to infinity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .bie import BieSolution, GmresSettings, cauchy_eval, solve_bie
from .domain import BoundarySampling, CircularDomain, discretize
from .errors import BadN, PoleProximity
from .kernels import KernelContext, SlitAngles, make_context

POLE_CLEARANCE = 1e-8


class Geometry(enum.Enum):
    FREE_SPACE = "free_space"
    HALF_PLANE = "half_plane"
    CHANNEL = "channel"


@dataclass(frozen=True)
class SlitMap:
    """One canonical conformal map evaluated on the boundary nodes.

    wall_offset is the component-0 constant used by the half-plane
    normalization; f_at_i is the correction constant of the channel map.
    Either is None when not applicable.
    """

    geometry: Geometry
    ctx: KernelContext
    bie: BieSolution
    boundary_values: np.ndarray = field(repr=False)
    wall_offset: float | None = None
    f_at_i: complex | None = None

    @property
    def sampling(self) -> BoundarySampling:
        return self.ctx.sampling


def mobius_half_plane(z):
    """Map of the unit disk onto the upper half-plane sending i to infinity."""
    z = np.asarray(z, dtype=complex)
    return 1j * (1j + z) / (1j - z)


def channel_log(z):
    """Map of the unit disk onto the channel |Im| < 1, fixing 0 and i."""
    z = np.asarray(z, dtype=complex)
    return (2.0 / np.pi) * np.log((1.0 + z) / (1.0 - z))


def _psi_boundary(geometry: Geometry, sampling: BoundarySampling) -> np.ndarray:
    """psi at all boundary nodes with analytic values on the unit circle."""
    n = sampling.n
    t = sampling.t
    idx = np.arange(n)
    psi = np.empty(sampling.total_nodes, dtype=complex)
    if geometry is Geometry.HALF_PLANE:
        # pole of psi at zeta = i, which is the node t = pi/2 when 4 | n
        pole = idx == n // 4 if n % 4 == 0 else np.zeros(n, dtype=bool)
        re0 = np.empty(n)
        re0[~pole] = np.cos(t[~pole]) / (1.0 - np.sin(t[~pole]))
        re0[pole] = np.inf
        psi[:n] = re0
        if sampling.connectivity > 1:
            psi[n:] = mobius_half_plane(sampling.zeta[n:])
    elif geometry is Geometry.CHANNEL:
        # the nodes t = 0 and t = pi map to the channel ends at +-infinity,
        # where the two walls meet and Im psi has no single limit
        ends = (idx == 0) | (idx == n // 2)
        re0 = np.empty(n)
        half = t[~ends] / 2.0
        re0[~ends] = (2.0 / np.pi) * (np.log(np.abs(np.cos(half))) - np.log(np.sin(half)))
        re0[0] = np.inf
        re0[n // 2] = -np.inf
        im0 = np.where(idx < n // 2, 1.0, -1.0)
        im0[ends] = np.nan
        psi[:n] = re0 + 1j * im0
        if sampling.connectivity > 1:
            psi[n:] = channel_log(sampling.zeta[n:])
    else:
        raise ValueError("free space has no closed-form part on the boundary")
    return psi


def _boundary_data(
    geometry: Geometry,
    sampling: BoundarySampling,
    angles: SlitAngles,
    alpha: complex,
    psi: np.ndarray | None,
) -> np.ndarray:
    if geometry is Geometry.FREE_SPACE:
        th = np.repeat(np.array(angles.angles), sampling.n)
        return np.imag(np.exp(-1j * th) / (sampling.zeta - alpha))
    gamma = np.zeros(sampling.total_nodes)
    for j in range(1, sampling.connectivity):
        sl = sampling.block(j)
        gamma[sl] = np.imag(np.exp(-1j * angles.angles[j]) * psi[sl])
    return gamma


def _f_at_i(sampling: BoundarySampling, f_boundary: np.ndarray, allow_interpolation: bool) -> complex:
    """Boundary value of f at zeta = i, read at the node t = pi/2 on the
    unit circle, or trigonometrically interpolated when allowed."""
    n = sampling.n
    if n % 4 == 0:
        return complex(f_boundary[n // 4])
    if not allow_interpolation:
        raise BadN(
            f"reading f(i) needs n divisible by 4 (got n={n}); "
            "pass allow_interpolation=True for the interpolation fallback"
        )
    coeffs = np.fft.fft(f_boundary[:n]) / n
    k = np.fft.fftfreq(n, d=1.0 / n)
    return complex(np.sum(coeffs * np.exp(1j * k * (np.pi / 2))))


def _check_half_channel_preconditions(angles: SlitAngles, n: int, allow_interpolation: bool):
    if angles.angles[0] != 0.0:
        raise ValueError(
            "the half-plane and channel maps require slit angle 0 on the unit circle"
        )
    if n % 4 and not allow_interpolation:
        raise BadN(f"n must be divisible by 4 for this geometry, got {n}")


def _solve_map(
    geometry: Geometry,
    sampling: BoundarySampling,
    alpha: complex,
    angles: SlitAngles,
    settings: GmresSettings | None,
    allow_interpolation: bool = False,
) -> SlitMap:
    ctx = make_context(sampling, angles, alpha)
    psi = None if geometry is Geometry.FREE_SPACE else _psi_boundary(geometry, sampling)
    gamma = _boundary_data(geometry, sampling, angles, alpha, psi)
    bie = solve_bie(ctx, gamma, settings)
    correction = (sampling.zeta - alpha) * bie.f_boundary
    wall_offset = None
    f_i = None
    if geometry is Geometry.FREE_SPACE:
        values = 1.0 / (sampling.zeta - alpha) + correction
    elif geometry is Geometry.HALF_PLANE:
        wall_offset = bie.constants[0]
        values = psi + correction + 1j * wall_offset
    else:
        f_i = _f_at_i(sampling, bie.f_boundary, allow_interpolation)
        with np.errstate(invalid="ignore"):
            values = psi + correction - (1j - alpha) * f_i
    values.flags.writeable = False
    return SlitMap(
        geometry=geometry,
        ctx=ctx,
        bie=bie,
        boundary_values=values,
        wall_offset=wall_offset,
        f_at_i=f_i,
    )


def map_free_space(
    domain: CircularDomain,
    n: int,
    alpha: complex,
    angles: SlitAngles,
    settings: GmresSettings | None = None,
) -> SlitMap:
    """Conformal map onto free space with m+1 slits, pole of residue 1 at alpha."""
    sampling = discretize(domain, n)
    return _solve_map(Geometry.FREE_SPACE, sampling, alpha, angles, settings)


def map_half_plane(
    domain: CircularDomain,
    n: int,
    alpha: complex,
    angles: SlitAngles,
    settings: GmresSettings | None = None,
    allow_interpolation: bool = False,
) -> SlitMap:
    """Conformal map onto the upper half-plane with m slits; the unit circle
    goes to the real line and zeta = i to infinity."""
    _check_half_channel_preconditions(angles, n, allow_interpolation)
    sampling = discretize(domain, n)
    return _solve_map(
        Geometry.HALF_PLANE, sampling, alpha, angles, settings, allow_interpolation
    )


def map_channel(
    domain: CircularDomain,
    n: int,
    alpha: complex,
    angles: SlitAngles,
    settings: GmresSettings | None = None,
    allow_interpolation: bool = False,
) -> SlitMap:
    """Conformal map onto the channel |Im| < 1 with m slits, fixing i."""
    _check_half_channel_preconditions(angles, n, allow_interpolation)
    sampling = discretize(domain, n)
    return _solve_map(
        Geometry.CHANNEL, sampling, alpha, angles, settings, allow_interpolation
    )


def eval_map(slit_map: SlitMap, points) -> np.ndarray:
    """Evaluate the map at strictly interior points.

    The correction f is computed by the Cauchy integral from its boundary
    values, then assembled with the geometry's closed-form part.  Free-space
    points closer than POLE_CLEARANCE to alpha raise PoleProximity.
    """
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    alpha = slit_map.ctx.alpha
    if slit_map.geometry is Geometry.FREE_SPACE and np.any(
        np.abs(pts - alpha) < POLE_CLEARANCE
    ):
        raise PoleProximity(
            f"evaluation point within {POLE_CLEARANCE} of the pole at {alpha}"
        )
    f_vals = cauchy_eval(slit_map.sampling, slit_map.bie.f_boundary, pts)
    correction = (pts - alpha) * f_vals
    if slit_map.geometry is Geometry.FREE_SPACE:
        return 1.0 / (pts - alpha) + correction
    if slit_map.geometry is Geometry.HALF_PLANE:
        return mobius_half_plane(pts) + correction + 1j * slit_map.wall_offset
    return channel_log(pts) + correction - (1j - alpha) * slit_map.f_at_i
