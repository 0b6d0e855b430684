"""Steady Hele-Shaw bubbles by boundary-integral conformal mapping.

Solves the free boundary problem for assemblies of zero-surface-tension
bubbles translating steadily through a Hele-Shaw cell in free space, the
upper half-plane, or an infinite channel.  Two conformal maps of a circular
preimage domain (one onto a vertical-slit domain, one onto a horizontal-slit
domain) are computed from a boundary integral equation with the generalized
Neumann kernel, discretized by the Nystrom method with the trapezoidal rule
and solved matrix-free by GMRES; their combination gives the physical map
and hence the bubble shapes.
"""

__version__ = "0.1.0"

from .bie import BieSolution, GmresSettings, cauchy_eval, gmres_solve, solve_bie
from .domain import (
    BoundarySampling,
    CircularDomain,
    Location,
    discretize,
    interior_mask,
    locate,
    make_domain,
)
from .heleshaw import (
    BubbleProblem,
    BubbleSolution,
    ResidualReport,
    bubble_areas,
    curve_area,
    eval_physical,
    rescale_to_area,
    residual_report,
    solve_bubbles,
)
from .kernels import (
    KernelContext,
    SlitAngles,
    apply_companion,
    apply_fredholm,
    companion_kernel_smooth,
    fredholm_matrix,
    make_context,
    neumann_kernel,
    release_operator_cache,
)
from .slitmaps import (
    Geometry,
    SlitMap,
    eval_map,
    map_channel,
    map_free_space,
    map_half_plane,
)
from .streamlines import Streamline, streamlines

__all__ = [
    "BieSolution",
    "BoundarySampling",
    "BubbleProblem",
    "BubbleSolution",
    "CircularDomain",
    "Geometry",
    "GmresSettings",
    "KernelContext",
    "Location",
    "ResidualReport",
    "SlitAngles",
    "SlitMap",
    "Streamline",
    "apply_companion",
    "apply_fredholm",
    "bubble_areas",
    "cauchy_eval",
    "companion_kernel_smooth",
    "curve_area",
    "discretize",
    "eval_map",
    "eval_physical",
    "fredholm_matrix",
    "gmres_solve",
    "interior_mask",
    "locate",
    "make_context",
    "make_domain",
    "map_channel",
    "map_free_space",
    "map_half_plane",
    "neumann_kernel",
    "release_operator_cache",
    "rescale_to_area",
    "residual_report",
    "solve_bie",
    "solve_bubbles",
    "streamlines",
]
