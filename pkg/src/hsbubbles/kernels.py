"""Generalized Neumann kernel, its singular companion, and their discrete operators.

Both kernels are built from the auxiliary boundary function

    aux(t) = exp(i(pi/2 - theta(t))) * (zeta(t) - alpha),

where theta is piecewise constant (the slit inclination per component) and
alpha is a base point inside the domain.  The Neumann kernel is the
imaginary part of aux(s)/aux(t) * zeta'(t)/(zeta(t) - zeta(s)) over pi and
is continuous; the companion kernel is the real part and is singular, its
singular piece being -cot((s-t)/2)/(2 pi).

On a single circle the exact identity

    zeta'(t)/(zeta(t) - zeta(s)) = cot((t-s)/2)/2 + sigma * i/2,

with sigma = +1 on the counterclockwise unit circle and -1 on the clockwise
inner circles, lets same-component entries be evaluated in a numerically
stable split form; the near-diagonal cancellations of the naive quotient
never appear.  Diagonal values are the continuous limits

    N(t,t)  = sigma/(2 pi) - Im[zeta'/(zeta - alpha)] / pi,
    M1(t,t) =             - Re[zeta'/(zeta - alpha)] / pi,

using aux'(t)/aux(t) = zeta'(t)/(zeta(t) - alpha).

Discrete operators use the Nystrom method with the trapezoidal rule
(weights 2 pi / n).  The singular part of the companion operator is applied
spectrally: on each component the principal-value cotangent integral acts
on Fourier modes as exp(ikt) -> i sgn(k) exp(iks) with the Nyquist mode
zeroed, which reproduces cos t -> -sin s and sin t -> cos s on the unit
disk with aux = zeta.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .domain import BoundarySampling, Location, locate
from .errors import AlphaOutside, DifferentComponent, LengthMismatch, OddN

# Above this many bytes the dense Fredholm matrix is not cached and matvecs
# stream block by block instead.
DENSE_CACHE_MAX_BYTES = 2_500_000_000


@dataclass(frozen=True)
class SlitAngles:
    """Slit inclination per boundary component, in radians."""

    angles: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.angles)

    @classmethod
    def vertical(cls, count: int) -> "SlitAngles":
        return cls((np.pi / 2,) * count)

    @classmethod
    def horizontal(cls, count: int) -> "SlitAngles":
        return cls((0.0,) * count)


@dataclass(frozen=True)
class KernelContext:
    """Sampled auxiliary function and everything needed to apply the operators.

    Immutable; the private cache only ever holds derived matrices.
    """

    sampling: BoundarySampling
    angles: SlitAngles
    alpha: complex
    aux: np.ndarray = field(repr=False)
    daux: np.ndarray = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def total_nodes(self) -> int:
        return self.sampling.total_nodes


def make_context(sampling: BoundarySampling, angles: SlitAngles, alpha: complex) -> KernelContext:
    """Tabulate aux and aux' for one map computation.

    Raises AlphaOutside unless alpha is strictly interior.
    """
    if len(angles) != sampling.connectivity:
        raise ValueError(
            f"need {sampling.connectivity} slit angles, got {len(angles)}"
        )
    alpha = complex(alpha)
    if locate(sampling.domain, alpha, 0.0) is not Location.INSIDE:
        raise AlphaOutside(f"base point {alpha} is not strictly inside the domain")
    phase = np.exp(1j * (np.pi / 2 - np.array(angles.angles)))
    phase_nodes = np.repeat(phase, sampling.n)
    aux = phase_nodes * (sampling.zeta - alpha)
    daux = phase_nodes * sampling.dzeta
    aux.flags.writeable = False
    daux.flags.writeable = False
    return KernelContext(sampling=sampling, angles=angles, alpha=alpha, aux=aux, daux=daux)


def _orientation_sign(c: int) -> float:
    return 1.0 if c == 0 else -1.0


def _log_derivative(ctx: KernelContext) -> np.ndarray:
    """aux'(t)/aux(t) = zeta'(t)/(zeta(t) - alpha) at all nodes."""
    if "logd" not in ctx._cache:
        s = ctx.sampling
        ctx._cache["logd"] = s.dzeta / (s.zeta - ctx.alpha)
    return ctx._cache["logd"]


def _cot_matrix(ctx: KernelContext) -> np.ndarray:
    """cot((t_q - t_p)/2) over one component's node grid, zero diagonal."""
    if "cot" not in ctx._cache:
        t = ctx.sampling.t
        half = (t[None, :] - t[:, None]) / 2.0
        np.fill_diagonal(half, np.pi / 4)  # placeholder angle, diagonal zeroed below
        c = 1.0 / np.tan(half)
        np.fill_diagonal(c, 0.0)
        ctx._cache["cot"] = c
    return ctx._cache["cot"]


def neumann_kernel(ctx: KernelContext, p: int, q: int) -> float:
    """Pointwise generalized Neumann kernel N(t_p, t_q), diagonal by its limit."""
    s = ctx.sampling
    if p == q:
        sig = _orientation_sign(int(s.component[p]))
        logd = s.dzeta[p] / (s.zeta[p] - ctx.alpha)
        return sig / (2.0 * np.pi) - logd.imag / np.pi
    if s.component[p] == s.component[q]:
        sig = _orientation_sign(int(s.component[p]))
        ratio = ctx.aux[p] / ctx.aux[q]
        cot = 1.0 / np.tan((s.t[q % s.n] - s.t[p % s.n]) / 2.0)
        return (cot * ratio.imag + sig * ratio.real) / (2.0 * np.pi)
    val = ctx.aux[p] / ctx.aux[q] * s.dzeta[q] / (s.zeta[q] - s.zeta[p])
    return val.imag / np.pi


def companion_kernel_smooth(ctx: KernelContext, p: int, q: int) -> float:
    """Smooth remainder M1(t_p, t_q) of the companion kernel after removing
    the cotangent singularity; defined on same-component pairs only."""
    s = ctx.sampling
    if s.component[p] != s.component[q]:
        raise DifferentComponent(
            "the cotangent split applies on a single component; cross-component "
            "companion values are smooth and evaluated directly"
        )
    if p == q:
        logd = s.dzeta[p] / (s.zeta[p] - ctx.alpha)
        return -logd.real / np.pi
    sig = _orientation_sign(int(s.component[p]))
    ratio = ctx.aux[p] / ctx.aux[q]
    cot = 1.0 / np.tan((s.t[q % s.n] - s.t[p % s.n]) / 2.0)
    return (cot * (ratio.real - 1.0) - sig * ratio.imag) / (2.0 * np.pi)


def _same_component_blocks(ctx: KernelContext, c: int) -> tuple[np.ndarray, np.ndarray]:
    """Neumann and smooth-companion blocks for component c against itself."""
    s = ctx.sampling
    sl = s.block(c)
    sig = _orientation_sign(c)
    aux_c = ctx.aux[sl]
    ratio = aux_c[:, None] * (1.0 / aux_c)[None, :]
    cot = _cot_matrix(ctx)
    nb = (cot * ratio.imag + sig * ratio.real) / (2.0 * np.pi)
    mb = (cot * (ratio.real - 1.0) - sig * ratio.imag) / (2.0 * np.pi)
    logd = _log_derivative(ctx)[sl]
    di = np.arange(s.n)
    nb[di, di] = sig / (2.0 * np.pi) - logd.imag / np.pi
    mb[di, di] = -logd.real / np.pi
    return nb, mb


def _cross_block(ctx: KernelContext, c: int, d: int) -> np.ndarray:
    """Complex kernel block rows=component c, cols=component d (c != d);
    its .imag/pi is the Neumann block and .real/pi the companion block."""
    s = ctx.sampling
    sl, sl2 = s.block(c), s.block(d)
    w = s.dzeta[sl2] * (1.0 / ctx.aux[sl2])
    block = s.zeta[sl2][None, :] - s.zeta[sl][:, None]
    np.divide(w[None, :], block, out=block)
    block *= ctx.aux[sl][:, None]
    return block


def fredholm_matrix(ctx: KernelContext) -> np.ndarray:
    """Dense matrix of the Nystrom-discretized Fredholm operator I - N_h."""
    s = ctx.sampling
    nn = s.total_nodes
    w = 2.0 * np.pi / s.n
    out = np.zeros((nn, nn))
    for c in range(s.connectivity):
        for d in range(s.connectivity):
            sl, sl2 = s.block(c), s.block(d)
            if c == d:
                nb, _ = _same_component_blocks(ctx, c)
                out[sl, sl2] = -w * nb
            else:
                out[sl, sl2] = (-w / np.pi) * _cross_block(ctx, c, d).imag
    out[np.diag_indices(nn)] += 1.0
    return out


def _cached_fredholm(ctx: KernelContext) -> np.ndarray | None:
    nn = ctx.total_nodes
    if nn * nn * 8 > DENSE_CACHE_MAX_BYTES:
        return None
    if "fredholm" not in ctx._cache:
        ctx._cache["fredholm"] = fredholm_matrix(ctx)
    return ctx._cache["fredholm"]


def release_operator_cache(ctx: KernelContext) -> None:
    """Drop cached dense matrices (they are derived data, safe to rebuild)."""
    ctx._cache.clear()


def _check_vector(ctx: KernelContext, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (ctx.total_nodes,):
        raise LengthMismatch(
            f"vector of shape {v.shape} does not match {ctx.total_nodes} nodes"
        )
    return v


def apply_fredholm(ctx: KernelContext, v) -> np.ndarray:
    """Apply v - N_h v with trapezoidal Nystrom weights."""
    v = _check_vector(ctx, v)
    dense = _cached_fredholm(ctx)
    if dense is not None:
        return dense @ v
    s = ctx.sampling
    w = 2.0 * np.pi / s.n
    out = v.copy()
    for c in range(s.connectivity):
        sl = s.block(c)
        for d in range(s.connectivity):
            sl2 = s.block(d)
            if c == d:
                nb, _ = _same_component_blocks(ctx, c)
                out[sl] -= w * (nb @ v[sl2])
            else:
                out[sl] -= (w / np.pi) * (_cross_block(ctx, c, d).imag @ v[sl2])
    return out


def _conjugation_multiplier(n: int) -> np.ndarray:
    """Fourier multiplier of the principal-value cotangent operator with
    kernel -cot((s-t)/2)/(2 pi): i*sgn(k), zero mean and Nyquist modes."""
    k = np.fft.fftfreq(n) * n
    mult = 1j * np.sign(k)
    mult[0] = 0.0
    mult[n // 2] = 0.0
    return mult


def apply_companion(ctx: KernelContext, v) -> np.ndarray:
    """Apply the singular companion operator M_h.

    Same-component contributions split into the spectral principal-value
    cotangent part (exact on the trigonometric interpolant) plus trapezoidal
    quadrature of the smooth remainder; cross-component contributions use
    plain trapezoidal quadrature of the full smooth kernel.
    """
    v = _check_vector(ctx, v)
    s = ctx.sampling
    if s.n % 2:
        raise OddN("the spectral singular operator needs an even node count")
    w = 2.0 * np.pi / s.n
    mult = _conjugation_multiplier(s.n)
    out = np.empty_like(v)
    for c in range(s.connectivity):
        sl = s.block(c)
        vc = v[sl]
        acc = np.fft.ifft(mult * np.fft.fft(vc)).real
        _, mb = _same_component_blocks(ctx, c)
        acc += w * (mb @ vc)
        for d in range(s.connectivity):
            if d == c:
                continue
            sl2 = s.block(d)
            acc += (w / np.pi) * (_cross_block(ctx, c, d).real @ v[sl2])
        out[sl] = acc
    return out
