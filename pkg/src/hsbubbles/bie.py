"""Boundary integral equation solver and interior evaluation.

The map computation reduces to the real linear equation

    (I - N_h) density = -M_h boundary_data

on the Nystrom nodes, solved matrix-free by GMRES without restart.  From
the density the piecewise constants and the boundary values of the sought
analytic function follow:

    constants(t) = [M_h density - (I - N_h) boundary_data] / 2,
    f(zeta(t))   = (boundary_data + constants + i density) / aux.

Interior values of f come from the Cauchy integral in normalized-quotient
form, which divides out the dominant quadrature error near the boundary.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .domain import BoundarySampling, interior_mask
from .errors import (
    BreakdownError,
    ConvergenceWarning,
    LengthMismatch,
    NonConvergence,
    PointOutside,
    ZeroDimension,
)
from .kernels import KernelContext, apply_companion, apply_fredholm

_EVAL_BLOCK = 512


@dataclass(frozen=True)
class GmresSettings:
    """GMRES without restart; defaults match the method's standard settings."""

    tol: float = 1e-14
    max_iterations: int = 100

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


def gmres_solve(operator, rhs, settings: GmresSettings = GmresSettings()):
    """Solve operator(x) = rhs by GMRES with modified Gram-Schmidt Arnoldi.

    No restart cycles.  Returns (solution, iterations, relative residual),
    the residual recomputed from the returned iterate.  A zero right-hand
    side short-circuits to the zero solution.  If the tolerance is not met
    within max_iterations the best iterate is returned and a
    ConvergenceWarning is issued; Arnoldi breakdown before convergence
    raises BreakdownError.
    """
    rhs = np.asarray(rhs, dtype=float)
    n = rhs.shape[0] if rhs.ndim == 1 else 0
    if rhs.ndim != 1 or n == 0:
        raise ZeroDimension(f"right-hand side must be a nonempty vector, got shape {rhs.shape}")
    norm_rhs = float(np.linalg.norm(rhs))
    if norm_rhs == 0.0:
        return np.zeros(n), 0, 0.0

    m = min(settings.max_iterations, n)
    basis = np.zeros((n, m + 1))
    hess = np.zeros((m + 1, m))
    cs = np.zeros(m)
    sn = np.zeros(m)
    g = np.zeros(m + 1)
    g[0] = norm_rhs
    basis[:, 0] = rhs / norm_rhs

    iterations = 0
    broke_down = False
    for j in range(m):
        iterations = j + 1
        # copy: the operator may return its argument (e.g. the identity)
        w = np.array(operator(basis[:, j]), dtype=float, copy=True)
        if w.shape != (n,):
            raise ValueError("operator changed the vector length")
        for i in range(j + 1):
            hess[i, j] = basis[:, i] @ w
            w -= hess[i, j] * basis[:, i]
        hess[j + 1, j] = np.linalg.norm(w)
        broke_down = hess[j + 1, j] <= 1e-15 * norm_rhs
        if not broke_down:
            basis[:, j + 1] = w / hess[j + 1, j]
        for i in range(j):
            hi = cs[i] * hess[i, j] + sn[i] * hess[i + 1, j]
            hess[i + 1, j] = -sn[i] * hess[i, j] + cs[i] * hess[i + 1, j]
            hess[i, j] = hi
        r = np.hypot(hess[j, j], hess[j + 1, j])
        cs[j] = hess[j, j] / r
        sn[j] = hess[j + 1, j] / r
        hess[j, j] = r
        hess[j + 1, j] = 0.0
        g[j + 1] = -sn[j] * g[j]
        g[j] *= cs[j]
        if abs(g[j + 1]) <= settings.tol * norm_rhs or broke_down:
            break

    y = np.linalg.solve(hess[:iterations, :iterations], g[:iterations])
    x = basis[:, :iterations] @ y
    residual = float(np.linalg.norm(rhs - np.asarray(operator(x), dtype=float)) / norm_rhs)
    if residual > settings.tol:
        if broke_down:
            raise BreakdownError(iterations, residual)
        warnings.warn(
            f"GMRES stopped at iteration {iterations} with relative residual "
            f"{residual:.3e} > tol {settings.tol:.1e}",
            ConvergenceWarning,
            stacklevel=2,
        )
    return x, iterations, residual


@dataclass(frozen=True)
class BieSolution:
    """Solution of the boundary integral equation for one map.

    constants holds the per-component means of the raw piecewise-constant
    samples; constants_deviation records how far the raw samples strayed,
    which measures discretization quality.
    """

    ctx: KernelContext
    boundary_data: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)
    constants: tuple[float, ...]
    constants_deviation: tuple[float, ...]
    f_boundary: np.ndarray = field(repr=False)
    iterations: int
    residual_norm: float
    converged: bool


def solve_bie(
    ctx: KernelContext,
    boundary_data,
    settings: GmresSettings | None = None,
    on_fail: str = "warn",
) -> BieSolution:
    """Solve the integral equation for the given boundary data.

    on_fail selects what happens when GMRES misses its tolerance: "warn"
    (default) returns the best iterate with a ConvergenceWarning already
    issued, "raise" raises NonConvergence.
    """
    if settings is None:
        settings = GmresSettings()
    if on_fail not in ("warn", "raise"):
        raise ValueError("on_fail must be 'warn' or 'raise'")
    gamma = np.asarray(boundary_data, dtype=float)
    rhs = -apply_companion(ctx, gamma)
    density, iterations, residual = gmres_solve(
        lambda v: apply_fredholm(ctx, v), rhs, settings
    )
    converged = residual <= settings.tol
    if not converged and on_fail == "raise":
        raise NonConvergence(iterations, residual)

    raw = 0.5 * (apply_companion(ctx, density) - apply_fredholm(ctx, gamma))
    s = ctx.sampling
    constants = []
    deviation = []
    pc = np.empty_like(raw)
    for c in range(s.connectivity):
        sl = s.block(c)
        mean = float(raw[sl].mean())
        constants.append(mean)
        deviation.append(float(np.max(np.abs(raw[sl] - mean))))
        pc[sl] = mean
    f_boundary = (gamma + pc + 1j * density) / ctx.aux
    density.flags.writeable = False
    f_boundary.flags.writeable = False
    gamma.flags.writeable = False
    return BieSolution(
        ctx=ctx,
        boundary_data=gamma,
        density=density,
        constants=tuple(constants),
        constants_deviation=tuple(deviation),
        f_boundary=f_boundary,
        iterations=iterations,
        residual_norm=residual,
        converged=converged,
    )


def cauchy_eval(sampling: BoundarySampling, boundary_values, points) -> np.ndarray:
    """Evaluate an analytic function inside the domain from boundary samples.

    Uses the trapezoidal Cauchy integral in normalized-quotient form

        f(p) = sum_q f_q zeta'_q/(zeta_q - p) / sum_q zeta'_q/(zeta_q - p),

    whose denominator approximates 2 pi i / (2 pi / n) for interior points
    thanks to the boundary orientation; the quotient cancels the dominant
    quadrature error when p approaches the boundary.

    Points must be strictly interior (PointOutside otherwise).
    """
    values = np.asarray(boundary_values, dtype=complex)
    if values.shape != (sampling.total_nodes,):
        raise LengthMismatch(
            f"boundary values of shape {values.shape} do not match "
            f"{sampling.total_nodes} nodes"
        )
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    inside = interior_mask(sampling.domain, pts, 0.0)
    if not inside.all():
        bad = pts[~inside]
        raise PointOutside(
            f"{bad.size} evaluation point(s) not strictly interior, first: {bad.flat[0]}"
        )
    out = np.empty(pts.shape, dtype=complex)
    flat = pts.ravel()
    res = out.ravel()
    zeta = sampling.zeta
    dzeta = sampling.dzeta
    for start in range(0, flat.size, _EVAL_BLOCK):
        chunk = flat[start : start + _EVAL_BLOCK]
        weights = dzeta[None, :] / (zeta[None, :] - chunk[:, None])
        res[start : start + _EVAL_BLOCK] = (weights @ values) / weights.sum(axis=1)
    return out
