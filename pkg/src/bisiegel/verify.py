"""Seeded self-verification suite.

Each check draws its own deterministic sample stream (seed mixed with the
check name), measures a worst-case residual over the requested number of
trials, and compares it against the tolerance pinned for that invariant.
The CLI renders the results as a pass/fail table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .domain import HPoint, cayley_to_disc, cayley_to_halfspace, h_contains, random_hpoint
from .geometry import (
    Tangent,
    connect,
    cross_ratio_eigenvalues,
    cross_ratio,
    distance,
    geodesic_ode_residual,
    metric_form,
    path_length,
    volume_density,
)
from .group import (
    MotionMatrix,
    apply,
    assemble,
    random_motion,
    random_sl2,
    reduce_pair,
    split,
)
from .hyperbolic import HalfPlanePoint, hyp_distance, mobius
from .numkit import DEFAULT_TOL, Mat4R

__all__ = ["CheckResult", "run_suite", "SUITE"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_residual: float
    tolerance: float
    trials: int

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _random_tangent(rng: random.Random) -> Tangent:
    return Tangent(
        complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
        complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
    )


def _points_gap(p: HPoint, q: HPoint) -> float:
    return max(abs(p.tau - q.tau), abs(p.z - q.z))


def _check_cayley_roundtrip(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        z = random_hpoint(rng)
        back = cayley_to_halfspace(cayley_to_disc(z))
        worst = max(worst, _points_gap(z, back))
    return worst


def _check_closure(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        m = random_motion(rng)
        z = random_hpoint(rng)
        w = apply(m, z)
        margin = w.tau.imag - abs(w.z.imag) - DEFAULT_TOL.dom_eps
        worst = max(worst, -min(margin, 0.0))
        if not h_contains(w.tau, w.z):
            worst = max(worst, 1.0)
    return worst


def _check_kernel(rng: random.Random, trials: int) -> float:
    from .domain import EXCHANGE_4

    kernel = [
        MotionMatrix(Mat4R.identity(), 1),
        MotionMatrix(Mat4R.identity().scale(-1.0), 1),
        MotionMatrix(EXCHANGE_4, 1),
        MotionMatrix(EXCHANGE_4.scale(-1.0), 1),
    ]
    worst = 0.0
    for _ in range(trials):
        z = random_hpoint(rng)
        for m in kernel:
            worst = max(worst, _points_gap(apply(m, z), z))
    return worst


def _check_group_law(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        m1 = random_motion(rng)
        m2 = random_motion(rng)
        z = random_hpoint(rng)
        worst = max(worst, _points_gap(apply(m1 @ m2, z), apply(m1, apply(m2, z))))
    return worst


def _check_factorization(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        m = random_motion(rng)
        z = random_hpoint(rng)
        m1, m2 = split(m)
        f_plus, f_minus = z.factors()
        g_plus = mobius(m1, HalfPlanePoint(f_plus.real, f_plus.imag)).as_complex()
        g_minus = mobius(m2, HalfPlanePoint(f_minus.real, f_minus.imag)).as_complex()
        if m.eps == -1:
            g_plus, g_minus = g_minus, g_plus
        w_plus, w_minus = apply(m, z).factors()
        worst = max(worst, abs(w_plus - g_plus), abs(w_minus - g_minus))
    return worst


def _check_split_assemble(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        m1 = random_sl2(rng)
        m2 = random_sl2(rng)
        eps = 1 if rng.random() < 0.5 else -1
        r1, r2 = split(assemble(m1, m2, eps))
        for got, want in ((r1, m1), (r2, m2)):
            worst = max(
                worst,
                abs(got.a - want.a),
                abs(got.b - want.b),
                abs(got.c - want.c),
                abs(got.d - want.d),
            )
    return worst


def _check_reduction(rng: random.Random, trials: int) -> float:
    # Residuals are scale-normalized: moving a point to height lambda through
    # a float matrix cannot beat lambda^2 * eps absolutely, so the honest
    # conditioning measure divides by the canonical height.
    base = HPoint(1j, 0.0)
    worst = 0.0
    for _ in range(trials):
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        red = reduce_pair(z1, z2)
        img1 = apply(red.mover, z1)
        img2 = apply(red.mover, z2)
        scale = max(1.0, red.lambda1)
        worst = max(
            worst,
            _points_gap(img1, base),
            abs(img2.tau - complex(0.0, red.lambda1)) / scale,
            abs(img2.z - complex(0.0, red.lambda2)) / scale,
        )
    return worst


def _check_reduction_invariance(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        m = random_motion(rng)
        red = reduce_pair(z1, z2)
        red_moved = reduce_pair(apply(m, z1), apply(m, z2))
        scale = max(1.0, red.lambda1)
        worst = max(
            worst,
            abs(red.lambda1 - red_moved.lambda1) / scale,
            abs(red.lambda2 - red_moved.lambda2) / scale,
        )
    return worst


def _check_isometry(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        m = random_motion(rng)
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        worst = max(worst, abs(distance(apply(m, z1), apply(m, z2)) - distance(z1, z2)))
    return worst


def _check_pythagoras(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        a1, a2 = z1.factors()
        b1, b2 = z2.factors()
        d_plus = hyp_distance(
            HalfPlanePoint(a1.real, a1.imag), HalfPlanePoint(b1.real, b1.imag)
        )
        d_minus = hyp_distance(
            HalfPlanePoint(a2.real, a2.imag), HalfPlanePoint(b2.real, b2.imag)
        )
        worst = max(worst, abs(distance(z1, z2) ** 2 - d_plus**2 - d_minus**2))
    return worst


def _check_cross_ratio_invariance(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        m = random_motion(rng)
        w1, w2 = apply(m, z1), apply(m, z2)
        worst = max(
            worst,
            abs(cross_ratio(z1, z2).trace() - cross_ratio(w1, w2).trace()),
        )
        ev = cross_ratio_eigenvalues(z1, z2)
        ev_m = cross_ratio_eigenvalues(w1, w2)
        worst = max(worst, abs(ev[0] - ev_m[0]), abs(ev[1] - ev_m[1]))
    return worst


def _check_metric_base(rng: random.Random, trials: int) -> float:
    base = HPoint(1j, 0.0)
    worst = 0.0
    for _ in range(trials):
        d = _random_tangent(rng)
        expected = 2.0 * (
            d.dtau.real**2 + d.dtau.imag**2 + d.dz.real**2 + d.dz.imag**2
        )
        worst = max(worst, abs(metric_form(base, d) - expected))
    return worst


def _check_metric_invariance(rng: random.Random, trials: int) -> float:
    h = 1e-6
    worst = 0.0
    for _ in range(trials):
        z = random_hpoint(rng)
        d = _random_tangent(rng)
        m = random_motion(rng)
        w_plus = apply(m, HPoint(z.tau + h * d.dtau, z.z + h * d.dz))
        w_minus = apply(m, HPoint(z.tau - h * d.dtau, z.z - h * d.dz))
        pushed = Tangent(
            (w_plus.tau - w_minus.tau) / (2.0 * h), (w_plus.z - w_minus.z) / (2.0 * h)
        )
        before = metric_form(z, d)
        after = metric_form(apply(m, z), pushed)
        worst = max(worst, abs(after - before) / before)
    return worst


def _check_geodesic_endpoints(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        spec = connect(z1, z2)
        worst = max(
            worst,
            _points_gap(spec.point(0.0), z1),
            _points_gap(spec.point(spec.s0), z2),
        )
    return worst


def _check_geodesic_reversal(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        fwd = connect(z1, z2)
        bwd = connect(z2, z1)
        for frac in (0.25, 0.5, 0.75):
            s = frac * fwd.s0
            worst = max(worst, _points_gap(fwd.point(s), bwd.point(fwd.s0 - s)))
    return worst


def _check_ode_residual(rng: random.Random, trials: int) -> float:
    h = 1e-3
    worst = 0.0
    for _ in range(trials):
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        spec = connect(z1, z2)
        for frac in (0.2, 0.5, 0.8):
            worst = max(worst, geodesic_ode_residual(spec.line_point, frac * spec.s0, h))
    return worst


def _check_arc_length(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        spec = connect(z1, z2)
        length = path_length(spec.line_point, 0.0, spec.s0, panels=2_000)
        worst = max(worst, abs(length - spec.s0) / spec.s0)
    return worst


def _check_volume_jacobian(rng: random.Random, trials: int) -> float:
    h = 1e-6
    worst = 0.0
    for _ in range(trials):
        z = random_hpoint(rng)
        m = random_motion(rng)

        def coords(x1: float, x2: float, y1: float, y2: float) -> tuple[float, ...]:
            w = apply(m, HPoint(complex(x1, y1), complex(x2, y2)))
            return (w.tau.real, w.z.real, w.tau.imag, w.z.imag)

        base = (z.tau.real, z.z.real, z.tau.imag, z.z.imag)
        jac = np.empty((4, 4))
        for j in range(4):
            bumped_plus = list(base)
            bumped_minus = list(base)
            bumped_plus[j] += h
            bumped_minus[j] -= h
            f_plus = coords(*bumped_plus)
            f_minus = coords(*bumped_minus)
            for i in range(4):
                jac[i, j] = (f_plus[i] - f_minus[i]) / (2.0 * h)
        w = apply(m, z)
        lhs = volume_density(w) * abs(float(np.linalg.det(jac)))
        rhs = volume_density(z)
        worst = max(worst, abs(lhs - rhs) / rhs)
    return worst


def _check_triangle(rng: random.Random, trials: int) -> float:
    worst = 0.0
    for _ in range(trials):
        z1 = random_hpoint(rng)
        z2 = random_hpoint(rng)
        z3 = random_hpoint(rng)
        violation = distance(z1, z3) - distance(z1, z2) - distance(z2, z3)
        worst = max(worst, violation)
    return worst


#: name -> (check, tolerance, trial divisor); divisors keep the expensive
#: finite-difference checks proportionate when --trials is large.
SUITE: dict[str, tuple[Callable[[random.Random, int], float], float, int]] = {
    "cayley_roundtrip": (_check_cayley_roundtrip, 1e-10, 1),
    "closure": (_check_closure, 0.0, 1),
    "kernel": (_check_kernel, 1e-12, 1),
    "group_law": (_check_group_law, 1e-9, 1),
    "factorization": (_check_factorization, 1e-9, 1),
    "split_assemble": (_check_split_assemble, 1e-12, 1),
    "reduction": (_check_reduction, 1e-8, 2),
    "reduction_invariance": (_check_reduction_invariance, 1e-8, 2),
    "isometry": (_check_isometry, 1e-8, 1),
    "pythagoras": (_check_pythagoras, 1e-9, 1),
    "cross_ratio_invariance": (_check_cross_ratio_invariance, 1e-8, 1),
    "metric_base": (_check_metric_base, 1e-12, 1),
    "metric_invariance": (_check_metric_invariance, 1e-5, 5),
    "geodesic_endpoints": (_check_geodesic_endpoints, 1e-8, 1),
    "geodesic_reversal": (_check_geodesic_reversal, 1e-8, 2),
    "ode_residual": (_check_ode_residual, 1e-5, 20),
    "arc_length": (_check_arc_length, 1e-6, 100),
    "volume_jacobian": (_check_volume_jacobian, 1e-4, 5),
    "triangle": (_check_triangle, 1e-12, 1),
}


def run_suite(seed: int, trials: int) -> list[CheckResult]:
    """Run every check with its own deterministic stream; order is fixed."""
    results = []
    for name, (check, tolerance, divisor) in SUITE.items():
        n = max(1, trials // divisor)
        residual = check(_rng(seed, name), n)
        results.append(CheckResult(name, residual, tolerance, n))
    return results
