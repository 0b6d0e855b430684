"""Built-in falsification suite behind the `validate` CLI subcommand.

Each check either exercises a closed-form case or cross-checks a fast code
path against an independent slow one (naive dense assembly, shifted-node
principal-value quadrature).  The suite is a trimmed, self-contained
mirror of the repository's acceptance tests, runnable from an installed
package without the test tree.
"""

from __future__ import annotations

import numpy as np

from .bie import cauchy_eval, gmres_solve
from .domain import discretize, make_domain
from .heleshaw import BubbleProblem, BubbleSolution, rescale_to_area, solve_bubbles
from .kernels import SlitAngles, apply_companion, apply_fredholm, make_context
from .slitmaps import Geometry, map_channel, map_half_plane

_FS_ALPHA = 1j * np.sqrt(0.4)


def _naive_fredholm_matrix(ctx) -> np.ndarray:
    """Direct entrywise Nystrom assembly of I - N_h, no stable splitting."""
    s = ctx.sampling
    nn = s.total_nodes
    w = 2.0 * np.pi / s.n
    mat = np.eye(nn)
    for p in range(nn):
        for q in range(nn):
            if p == q:
                sig = 1.0 if s.component[p] == 0 else -1.0
                logd = s.dzeta[p] / (s.zeta[p] - ctx.alpha)
                val = sig / (2 * np.pi) - logd.imag / np.pi
            else:
                val = (
                    ctx.aux[p] / ctx.aux[q] * s.dzeta[q] / (s.zeta[q] - s.zeta[p])
                ).imag / np.pi
            mat[p, q] -= w * val
    return mat


def _shifted_pv_companion(domain, angles, alpha, n, v_func) -> np.ndarray:
    """Companion operator by trapezoidal quadrature on half-shifted nodes.

    Shifting the integration grid by half a spacing puts the cotangent
    singularity exactly between nodes, where the periodic trapezoidal rule
    handles the principal value spectrally.  v_func(component, t) must be
    evaluable anywhere.
    """
    t = 2.0 * np.pi * np.arange(n) / n
    ts = t + np.pi / n
    conn = domain.connectivity

    def boundary(tv):
        zs = [np.exp(1j * tv)]
        dzs = [1j * np.exp(1j * tv)]
        for c, r in zip(domain.centers, domain.radii):
            e = r * np.exp(-1j * tv)
            zs.append(c + e)
            dzs.append(-1j * e)
        return np.concatenate(zs), np.concatenate(dzs)

    zeta_s, dzeta_s = boundary(t)
    zeta_q, dzeta_q = boundary(ts)
    phase = np.repeat(np.exp(1j * (np.pi / 2 - np.array(angles.angles))), n)
    aux_s = phase * (zeta_s - alpha)
    aux_q = phase * (zeta_q - alpha)
    v_q = np.concatenate([v_func(c, ts) for c in range(conn)])
    kernel = (
        aux_s[:, None] / aux_q[None, :] * dzeta_q[None, :]
        / (zeta_q[None, :] - zeta_s[:, None])
    ).real / np.pi
    return (2.0 * np.pi / n) * (kernel @ v_q)


def _solve(geometry, centers, radii, speed, alpha, n, scale=None, comoving=None) -> BubbleSolution:
    problem = BubbleProblem(
        geometry=geometry,
        domain=make_domain(centers, radii),
        speed=speed,
        alpha=alpha,
        n=n,
        scale_target=scale,
    )
    return solve_bubbles(problem, comoving_factor=comoving)


def _extent(curve):
    return (
        float(curve.real.max() - curve.real.min()),
        float(curve.imag.max() - curve.imag.min()),
    )


def check_ellipse_aspect_law(comoving=None):
    worst = 0.0
    for speed in (1.5, 2.0, 3.0, 4.0):
        sol = _solve(Geometry.FREE_SPACE, [], [], speed, 0.0, 256, comoving=comoving)
        width, height = _extent(sol.bubble_curves[0])
        worst = max(worst, abs(width / height - (speed - 1.0)))
    return worst < 1e-8, f"max aspect-ratio deviation {worst:.2e}"


def check_circle_at_speed_two(comoving=None):
    sol = _solve(Geometry.FREE_SPACE, [], [], 2.0, 0.0, 256, comoving=comoving)
    curve = sol.bubble_curves[0]
    radii = np.abs(curve - curve.mean())
    dev = float(radii.max() - radii.min())
    return dev < 1e-10, f"radius deviation {dev:.2e}"


def check_area_at_speed_three(comoving=None):
    sol = _solve(Geometry.FREE_SPACE, [], [], 3.0, 0.0, 256, comoving=comoving)
    err = abs(sol.areas[0] - 8 * np.pi / 9)
    return err < 1e-10, f"area error {err:.2e}"


def check_half_plane_identity(comoving=None):
    m = map_half_plane(make_domain([], []), 256, -0.3, SlitAngles.horizontal(1))
    finite = np.isfinite(m.boundary_values.real)
    dev = float(np.max(np.abs(m.boundary_values.imag[finite])))
    ok = dev < 1e-14 and m.bie.iterations == 0
    return ok, f"|Im| on the wall {dev:.2e}, {m.bie.iterations} iterations"


def check_channel_identity(comoving=None):
    n = 256
    m = map_channel(make_domain([], []), n, -0.3, SlitAngles.horizontal(1))
    fix = abs(m.boundary_values[n // 4] - 1j)
    upper = np.abs(m.boundary_values[1 : n // 2].imag - 1.0).max()
    lower = np.abs(m.boundary_values[n // 2 + 1 :].imag + 1.0).max()
    ok = fix < 1e-14 and max(upper, lower) < 1e-14
    return ok, f"|map(i) - i| = {fix:.2e}, wall deviation {max(upper, lower):.2e}"


def check_equal_area(comoving=None):
    sol = _solve(
        Geometry.FREE_SPACE, [0.0], [0.4], 2.0, _FS_ALPHA, 512, comoving=comoving
    )
    rel = abs(sol.areas[0] - sol.areas[1]) / np.pi
    scaled = rescale_to_area(sol, 0, np.pi)
    worst = float(np.max(np.abs(scaled.areas - np.pi)))
    ok = rel < 1e-8 and worst < 1e-10
    return ok, f"|A0-A1|/pi = {rel:.2e}, scaled-area error {worst:.2e}"


def check_channel_walls(comoving=None):
    sol = _solve(
        Geometry.CHANNEL,
        [0.03j, 0.6 + 0.15j],
        [0.2, 0.25],
        2.0,
        -0.5,
        512,
        comoving=comoving,
    )
    wall = sol.diagnostics.wall_residual
    ok = wall < 1e-8 and sol.diagnostics.contained
    return ok, f"wall residual {wall:.2e}"


def check_half_plane_wall(comoving=None):
    sol = _solve(
        Geometry.HALF_PLANE,
        [0.5009j, 0.3277j],
        [0.0558, 0.1003],
        2.0,
        -0.5,
        512,
        comoving=comoving,
    )
    wall = sol.diagnostics.wall_residual
    ok = wall < 1e-8 and sol.diagnostics.contained
    return ok, f"wall residual {wall:.2e}"


def check_convergence_ladder(comoving=None):
    ref = _solve(Geometry.FREE_SPACE, [0.0], [0.4], 2.0, _FS_ALPHA, 512, comoving=comoving)
    errors = []
    for n in (64, 128, 256):
        sol = _solve(Geometry.FREE_SPACE, [0.0], [0.4], 2.0, _FS_ALPHA, n, comoving=comoving)
        step = 512 // n
        err = max(
            float(np.max(np.abs(sol.boundary_all[c] - ref.boundary_all[c][::step])))
            for c in range(2)
        )
        errors.append(err)
    ok = all(
        nxt <= prev / 10.0 or prev < 1e-11
        for prev, nxt in zip(errors, errors[1:])
    ) and errors[-1] < 1e-11
    return ok, "errors " + ", ".join(f"{e:.2e}" for e in errors)


def check_companion_spectral_vs_pv(comoving=None):
    n = 256
    domain = make_domain([0.0], [0.4])
    sampling = discretize(domain, n)
    angles = SlitAngles.vertical(2)
    ctx = make_context(sampling, angles, _FS_ALPHA)

    def v_func(c, tv):
        return np.cos(3 * tv) - 0.5 * np.sin(7 * tv) + (0.25 if c else -0.5) * np.cos(tv)

    v = np.concatenate([v_func(c, sampling.t) for c in range(2)])
    fast = apply_companion(ctx, v)
    slow = _shifted_pv_companion(domain, angles, _FS_ALPHA, n, v_func)
    err = float(np.max(np.abs(fast - slow)))
    return err < 1e-10, f"max deviation {err:.2e}"


def check_fredholm_vs_dense(comoving=None):
    n = 32
    domain = make_domain([0.0], [0.4])
    ctx = make_context(discretize(domain, n), SlitAngles.vertical(2), _FS_ALPHA)
    dense = _naive_fredholm_matrix(ctx)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        v = rng.standard_normal(2 * n)
        worst = max(worst, float(np.max(np.abs(apply_fredholm(ctx, v) - dense @ v))))
    return worst < 1e-13, f"max matvec deviation {worst:.2e}"


def check_cauchy_quadratic(comoving=None):
    n = 256
    domain = make_domain([0.0], [0.4])
    sampling = discretize(domain, n)
    points = np.array([0.7 + 0.0j, -0.2 - 0.6j, 0.45 + 0.45j, -0.7 + 0.15j, 0.05 + 0.55j])
    got = cauchy_eval(sampling, sampling.zeta**2, points)
    err = float(np.max(np.abs(got - points**2)))
    return err < 1e-12, f"max error {err:.2e}"


def check_gmres_basics(comoving=None):
    x, it, res = gmres_solve(lambda v: v, np.array([3.0, -1.0, 2.0]))
    ok1 = it <= 1 and np.allclose(x, [3.0, -1.0, 2.0]) and res < 1e-14
    d = np.array([1.0, 2.0])
    x2, it2, res2 = gmres_solve(lambda v: d * v, np.array([1.0, 2.0]))
    ok2 = it2 <= 2 and np.allclose(x2, [1.0, 1.0]) and res2 < 1e-14
    return ok1 and ok2, f"identity in {it} it, diagonal in {it2} it"


CHECKS = [
    ("ellipse_aspect_law", check_ellipse_aspect_law),
    ("circle_at_speed_two", check_circle_at_speed_two),
    ("area_at_speed_three", check_area_at_speed_three),
    ("half_plane_identity", check_half_plane_identity),
    ("channel_identity", check_channel_identity),
    ("equal_area", check_equal_area),
    ("channel_walls", check_channel_walls),
    ("half_plane_wall", check_half_plane_wall),
    ("convergence_ladder", check_convergence_ladder),
    ("companion_spectral_vs_pv", check_companion_spectral_vs_pv),
    ("fredholm_vs_dense", check_fredholm_vs_dense),
    ("cauchy_quadratic", check_cauchy_quadratic),
    ("gmres_basics", check_gmres_basics),
]


def run_validation(comoving_factor: float | None = None, quiet: bool = False) -> int:
    """Run every check; print one PASS/FAIL line each; return 0 iff all pass.

    comoving_factor injects a wrong scaling of the horizontal-slit map into
    the physical checks, to confirm the suite would catch it.
    """
    failures = 0
    for name, fn in CHECKS:
        try:
            ok, detail = fn(comoving=comoving_factor)
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        if not ok:
            failures += 1
        if not quiet or not ok:
            print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    if not quiet:
        total = len(CHECKS)
        print(f"{total - failures}/{total} checks passed")
    return 0 if failures == 0 else 1
