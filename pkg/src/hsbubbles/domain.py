"""Circular preimage domains and their spectral boundary samplings.

The computational domain is the unit disk with m disjoint circular holes.
The outer unit circle is traversed counterclockwise, every inner circle
clockwise, so the domain always lies to the left of the oriented boundary.
Samplings store closed-form node positions and derivatives; nothing is
differenced numerically.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import BadN, BadRadius, OutsideError, OverlapError

DEFAULT_MIN_GAP = 1e-3


class Location(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    NEAR_BOUNDARY = "near_boundary"


@dataclass(frozen=True)
class CircularDomain:
    """Unit disk minus m pairwise disjoint closed disks.

    Instances are produced by :func:`make_domain`, which validates the
    geometry; the constructor itself performs no checks.
    """

    centers: tuple[complex, ...]
    radii: tuple[float, ...]

    @property
    def m(self) -> int:
        """Number of inner circles."""
        return len(self.centers)

    @property
    def connectivity(self) -> int:
        """Number of boundary components, m + 1."""
        return len(self.centers) + 1


def make_domain(centers, radii, min_gap: float = DEFAULT_MIN_GAP) -> CircularDomain:
    """Validate and build a circular domain.

    Every inner disk must lie strictly inside the unit disk and the disks
    must be pairwise disjoint; all gaps (disk to disk, and disk to unit
    circle) must be at least ``min_gap``.

    Raises
    ------
    BadRadius, OutsideError, OverlapError
    """
    centers = tuple(complex(c) for c in centers)
    radii = tuple(float(r) for r in radii)
    if len(centers) != len(radii):
        raise ValueError(
            f"centers and radii differ in length ({len(centers)} vs {len(radii)})"
        )
    if min_gap < 0:
        raise ValueError("min_gap must be nonnegative")
    for j, r in enumerate(radii):
        if r <= 0:
            raise BadRadius(f"circle {j + 1}: radius {r} is not positive")
    for j, (c, r) in enumerate(zip(centers, radii)):
        reach = abs(c) + r
        if reach >= 1.0:
            raise OutsideError(
                f"circle {j + 1} (center {c}, radius {r}) is not strictly "
                f"inside the unit disk (|center| + radius = {reach})"
            )
        if 1.0 - reach < min_gap:
            raise OverlapError(
                f"circle {j + 1} is closer than min_gap={min_gap} to the "
                f"unit circle (gap {1.0 - reach:.3e})"
            )
    for j in range(len(centers)):
        for k in range(j + 1, len(centers)):
            gap = abs(centers[j] - centers[k]) - (radii[j] + radii[k])
            if gap <= 0:
                raise OverlapError(f"circles {j + 1} and {k + 1} intersect (gap {gap:.3e})")
            if gap < min_gap:
                raise OverlapError(
                    f"circles {j + 1} and {k + 1} violate min_gap={min_gap} "
                    f"(gap {gap:.3e})"
                )
    return CircularDomain(centers, radii)


@dataclass(frozen=True)
class BoundarySampling:
    """Equispaced nodes on every boundary component of a circular domain.

    Nodes on each component are t_p = 2 pi p / n.  Arrays are flat with the
    component-0 block first, and are read-only.

    Attributes
    ----------
    t : (n,) parameter values, shared by all components.
    zeta, dzeta, ddzeta : ((m+1)*n,) positions and parameter derivatives.
    component : ((m+1)*n,) component index of each node.
    """

    domain: CircularDomain
    n: int
    t: np.ndarray = field(repr=False)
    zeta: np.ndarray = field(repr=False)
    dzeta: np.ndarray = field(repr=False)
    ddzeta: np.ndarray = field(repr=False)
    component: np.ndarray = field(repr=False)

    @property
    def connectivity(self) -> int:
        return self.domain.connectivity

    @property
    def total_nodes(self) -> int:
        return self.domain.connectivity * self.n

    def block(self, j: int) -> slice:
        """Index slice of component j's nodes in the flat arrays."""
        return slice(j * self.n, (j + 1) * self.n)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def discretize(domain: CircularDomain, n: int) -> BoundarySampling:
    """Sample the boundary with n nodes per component.

    The unit circle carries exp(it) counterclockwise; inner circles carry
    z_j + r_j exp(-it) clockwise.  Second derivatives satisfy the exact
    circle identity ddzeta = +i dzeta on the unit circle and -i dzeta on
    the inner circles.
    """
    if n < 8 or n % 2:
        raise BadN(f"n must be even and at least 8, got {n}")
    t = 2.0 * np.pi * np.arange(n) / n
    outer = np.exp(1j * t)
    zeta = [outer]
    dzeta = [1j * outer]
    ddzeta = [1j * (1j * outer)]
    for c, r in zip(domain.centers, domain.radii):
        e = r * np.exp(-1j * t)
        zeta.append(c + e)
        dzeta.append(-1j * e)
        ddzeta.append(-1j * (-1j * e))
    comp = np.repeat(np.arange(domain.connectivity), n)
    return BoundarySampling(
        domain=domain,
        n=n,
        t=_freeze(t),
        zeta=_freeze(np.concatenate(zeta)),
        dzeta=_freeze(np.concatenate(dzeta)),
        ddzeta=_freeze(np.concatenate(ddzeta)),
        component=_freeze(comp),
    )


def locate(domain: CircularDomain, point: complex, margin: float = 0.0) -> Location:
    """Classify a point against the domain with a safety margin.

    INSIDE means strictly interior with clearance > margin from every
    circle; NEAR_BOUNDARY means within margin of some circle; OUTSIDE
    covers everything else (including deep inside an excluded disk).
    """
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    point = complex(point)
    dist_unit = 1.0 - abs(point)
    if dist_unit > margin:
        inside = all(
            abs(point - c) - r > margin
            for c, r in zip(domain.centers, domain.radii)
        )
        if inside:
            return Location.INSIDE
    dists = [abs(dist_unit)] + [
        abs(abs(point - c) - r) for c, r in zip(domain.centers, domain.radii)
    ]
    if min(dists) <= margin:
        return Location.NEAR_BOUNDARY
    return Location.OUTSIDE


def interior_mask(domain: CircularDomain, points: np.ndarray, margin: float = 0.0) -> np.ndarray:
    """Vectorized test for strict interiority with clearance > margin."""
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    pts = np.asarray(points, dtype=complex)
    mask = np.abs(pts) < 1.0 - margin
    for c, r in zip(domain.centers, domain.radii):
        mask &= np.abs(pts - c) > r + margin
    return mask
