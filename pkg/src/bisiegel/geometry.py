"""Metric structure: cross ratio, invariant metric, distance, geodesics,
volume density.

The invariant metric is tr(Y^-1 dZ Y^-1 d(conj Z)) at Z = X + iY.  In the
factor coordinates (tau + z, tau - z) it splits into two half-plane metrics
|dw|^2 / (Im w)^2, which is what all the closed forms below exploit: the
distance combines the two per-factor dilations, and a geodesic is a pair of
half-plane geodesics traversed with a common arc-length parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .domain import HPoint
from .errors import (
    DegeneratePair,
    DomainViolation,
    NumericalBreakdown,
    OutOfRange,
)
from .numkit import DEFAULT_TOL, Mat2C, Tolerance

__all__ = [
    "Tangent",
    "GeodesicSpec",
    "cross_ratio",
    "cross_ratio_eigenvalues",
    "metric_form",
    "distance",
    "distance_params",
    "connect",
    "geodesic",
    "geodesic_central",
    "geodesic_ode_residual",
    "path_speed",
    "path_length",
    "simpson",
    "volume_density",
]


@dataclass(frozen=True)
class Tangent:
    """Bi-symmetric displacement (dtau, dz) at a half-space point."""

    dtau: complex
    dz: complex

    def __post_init__(self) -> None:
        dtau, dz = complex(self.dtau), complex(self.dz)
        for v in (dtau, dz):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise DomainViolation(f"non-finite tangent component {v!r}")
        object.__setattr__(self, "dtau", dtau)
        object.__setattr__(self, "dz", dz)

    def as_matrix(self) -> Mat2C:
        return Mat2C.bisym(self.dtau, self.dz)

    def factors(self) -> tuple[complex, complex]:
        return (self.dtau + self.dz, self.dtau - self.dz)


def cross_ratio(z: HPoint, z1: HPoint, tol: Tolerance = DEFAULT_TOL) -> Mat2C:
    """Matrix cross ratio (Z-Z1)(Z-conj Z1)^-1 (conj Z-conj Z1)(conj Z-Z1)^-1.

    Its eigenvalues lie in [0, 1) and classify the pair up to a motion.
    """
    a = z.as_matrix()
    b = z1.as_matrix()
    ac, bc = a.conj(), b.conj()
    return (a - b) @ (a - bc).inverse(tol) @ (ac - bc) @ (ac - b).inverse(tol)


def cross_ratio_eigenvalues(
    z: HPoint, z1: HPoint, tol: Tolerance = DEFAULT_TOL
) -> tuple[float, float]:
    """Eigenvalues of the cross ratio, descending.

    A bi-symmetric matrix diagonalizes by the fixed 45-degree rotation, so
    the eigenvalues are just sum and difference of the two distinct entries;
    no general eigensolver is involved.  The imaginary residue must vanish.
    """
    r = cross_ratio(z, z1, tol)
    on_diag = (r.a + r.d) / 2.0
    off_diag = (r.b + r.c) / 2.0
    ev = (on_diag + off_diag, on_diag - off_diag)
    residue = max(abs(v.imag) for v in ev)
    if residue > tol.abs_eps:
        raise NumericalBreakdown(f"cross ratio eigenvalue imaginary residue {residue:.3e}")
    lo, hi = sorted((ev[0].real, ev[1].real))
    return (hi, lo)


def metric_form(point: HPoint, d: Tangent, tol: Tolerance = DEFAULT_TOL) -> float:
    """Squared length tr(Y^-1 dZ Y^-1 d(conj Z)) of a tangent displacement."""
    y_inv = point.imag_matrix().inverse(tol)
    dz = d.as_matrix()
    val = (y_inv @ dz @ y_inv @ dz.conj()).trace()
    return max(val.real, 0.0)


def _factor_dilation(f1: complex, f2: complex) -> tuple[float, float]:
    """Per-factor invariants: the chordal ratio and its dilation >= 1."""
    x, y = f1.real, f1.imag
    u, v = f2.real, f2.imag
    big = (y * y + v * v + (x - u) ** 2) / (y * v)
    if big < 2.0 - 1e-9:
        # >= 2 by the arithmetic-geometric inequality; only garbage gets here
        raise NumericalBreakdown(f"chordal ratio {big!r} below 2")
    big = max(big, 2.0)
    lam = (big + math.sqrt(max(big * big - 4.0, 0.0))) / 2.0
    return big, lam


def distance_params(z1: HPoint, z2: HPoint) -> tuple[float, float]:
    """The two per-factor ratios (each >= 2) entering the distance."""
    a1, a2 = z1.factors()
    b1, b2 = z2.factors()
    return _factor_dilation(a1, b1)[0], _factor_dilation(a2, b2)[0]


def distance(z1: HPoint, z2: HPoint, tol: Tolerance = DEFAULT_TOL) -> float:
    """Invariant distance: root-sum-square of the two factor log-dilations.

    Exactly zero when both factor coordinates coincide within ``dom_eps``,
    bypassing logs of values barely above 1.
    """
    a1, a2 = z1.factors()
    b1, b2 = z2.factors()
    if abs(a1 - b1) <= tol.dom_eps and abs(a2 - b2) <= tol.dom_eps:
        return 0.0
    _, lam = _factor_dilation(a1, b1)
    _, lam_tilde = _factor_dilation(a2, b2)
    return math.hypot(math.log(lam), math.log(lam_tilde))


def _unit_drift(u: float, t: float) -> float:
    """(lam^{2t} - 1) / (lam^2 - 1) for u = log lam, stable near u = 0."""
    if u < 1e-9:
        # Unit-dilation branch: the moving terms this multiplies vanish at
        # the same rate, so the continuity limit t is exact enough.
        return t
    return math.expm1(2.0 * u * t) / math.expm1(2.0 * u)


def _factor_geodesic(f1: complex, f2: complex, lam: float, t: float) -> complex:
    """Point at fraction t of the half-plane geodesic from f1 to f2.

    Closed form: the start-normalizing shear pulls the segment onto the
    vertical line i -> lam*i, which is traversed as lam^t.
    """
    x, y = f1.real, f1.imag
    u, v = f2.real, f2.imag
    if lam <= 1.0 + 1e-9:
        return complex(x, y * lam**t)
    g = _unit_drift(math.log(lam), t)
    num = lam * (u - x) * g + 1j * v * lam**t
    den = (lam * y - v) * g + v
    return x + y * num / den


@dataclass(frozen=True)
class GeodesicSpec:
    """Endpoint data of a geodesic segment: points, length, factor dilations."""

    z1: HPoint
    z2: HPoint
    s0: float
    lam: float
    lam_tilde: float

    def __post_init__(self) -> None:
        if self.lam < 1.0 or self.lam_tilde < 1.0:
            raise ValueError("factor dilations must be >= 1")
        a1, a2 = self.z1.factors()
        b1, b2 = self.z2.factors()
        drift = max(
            abs(self.lam - _factor_dilation(a1, b1)[1]),
            abs(self.lam_tilde - _factor_dilation(a2, b2)[1]),
            abs(self.s0 - math.hypot(math.log(self.lam), math.log(self.lam_tilde))),
        )
        if drift > DEFAULT_TOL.abs_eps * max(1.0, self.lam, self.lam_tilde):
            raise ValueError(f"endpoint data inconsistent with the endpoints (drift {drift:.3e})")

    def line_point(self, s: float) -> HPoint:
        """Point on the full geodesic line at arc length s from the first
        endpoint (s may leave [0, s0]; the segment endpoints are at 0 and s0)."""
        t = s / self.s0
        a1, a2 = self.z1.factors()
        b1, b2 = self.z2.factors()
        return HPoint.from_factors(
            _factor_geodesic(a1, b1, self.lam, t),
            _factor_geodesic(a2, b2, self.lam_tilde, t),
        )

    def point(self, s: float, tol: Tolerance = DEFAULT_TOL) -> HPoint:
        if not (-tol.abs_eps <= s <= self.s0 + tol.abs_eps):
            raise OutOfRange(f"arc length s={s!r} outside [0, {self.s0!r}]")
        return self.line_point(s)


def connect(z1: HPoint, z2: HPoint, tol: Tolerance = DEFAULT_TOL) -> GeodesicSpec:
    """Geodesic segment data for a pair of distinct points."""
    s0 = distance(z1, z2, tol)
    if s0 < tol.dom_eps:
        raise DegeneratePair("geodesic through coincident points is undetermined")
    a1, a2 = z1.factors()
    b1, b2 = z2.factors()
    _, lam = _factor_dilation(a1, b1)
    _, lam_tilde = _factor_dilation(a2, b2)
    return GeodesicSpec(z1, z2, s0, lam, lam_tilde)


def geodesic(z1: HPoint, z2: HPoint, s: float, tol: Tolerance = DEFAULT_TOL) -> HPoint:
    """Point at arc length s on the geodesic segment from z1 to z2."""
    return connect(z1, z2, tol).point(s, tol)


def geodesic_central(
    lambda1: float, lambda2: float, s: float, tol: Tolerance = DEFAULT_TOL
) -> HPoint:
    """Arc-length point on the canonical geodesic from iI towards
    i*[[lambda1, lambda2], [lambda2, lambda1]].

    Both factors are vertical half-plane geodesics: the factor coordinates at
    arc length s are i*(lambda1 + lambda2)^{s/s0} and
    i*(lambda1 - lambda2)^{s/s0}.
    """
    l1, l2 = float(lambda1), float(lambda2)
    if l2 < -tol.abs_eps or l1 < l2 + 1.0 - tol.abs_eps:
        raise DomainViolation(f"invalid canonical pair (lambda1={l1!r}, lambda2={l2!r})")
    s0 = math.hypot(math.log(l1 + l2), math.log(l1 - l2))
    if s0 < tol.dom_eps:
        if abs(s) > tol.abs_eps:
            raise OutOfRange("degenerate canonical pair admits only s = 0")
        return HPoint(1j, 0.0)
    if not (-tol.abs_eps <= s <= s0 + tol.abs_eps):
        raise OutOfRange(f"arc length s={s!r} outside [0, {s0!r}]")
    t = s / s0
    return HPoint.from_factors(1j * (l1 + l2) ** t, 1j * (l1 - l2) ** t)


def geodesic_ode_residual(
    curve: Callable[[float], HPoint], s: float, h: float, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Central-difference residual of the geodesic equation Z'' + i Z' Y^-1 Z' = 0.

    For a true geodesic this decays like h^2; for a non-geodesic it stays
    bounded away from zero as h -> 0.
    """
    if not h > 0.0:
        raise OutOfRange(f"step h={h!r} must be positive")
    z_minus = curve(s - h).as_matrix()
    z_mid = curve(s)
    z_plus = curve(s + h).as_matrix()
    zm = z_mid.as_matrix()
    second = (z_plus - zm.scale(2.0) + z_minus).scale(1.0 / (h * h))
    first = (z_plus - z_minus).scale(1.0 / (2.0 * h))
    residual = second + (first @ z_mid.imag_matrix().inverse(tol) @ first).scale(1j)
    return residual.max_abs()


def simpson(f: Callable[[float], float], a: float, b: float, panels: int) -> float:
    """Composite Simpson rule with the given (even) number of panels."""
    if panels < 2 or panels % 2 != 0:
        raise ValueError("panels must be a positive even integer")
    h = (b - a) / panels
    total = f(a) + f(b)
    for k in range(1, panels):
        total += f(a + k * h) * (4.0 if k % 2 else 2.0)
    return total * h / 3.0


def path_speed(
    curve: Callable[[float], HPoint], s: float, h: float, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Metric speed of a curve at s, tangent taken by central differences."""
    z_plus = curve(s + h)
    z_minus = curve(s - h)
    d = Tangent(
        (z_plus.tau - z_minus.tau) / (2.0 * h), (z_plus.z - z_minus.z) / (2.0 * h)
    )
    return math.sqrt(metric_form(curve(s), d, tol))


def path_length(
    curve: Callable[[float], HPoint],
    s_from: float,
    s_to: float,
    panels: int = 10_000,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Simpson-integrated metric length of a curve between two parameters."""
    h = max(abs(s_to - s_from), 1.0) * 1e-5
    return simpson(lambda s: path_speed(curve, s, h, tol), s_from, s_to, panels)


def volume_density(point: HPoint) -> float:
    """Invariant volume density against dx1 dx2 dy1 dy2 at the point.

    Equal to 4 / ((y1 + y2)^2 (y1 - y2)^2) for y1 = Im tau, y2 = Im z; the
    product of the two squared factor heights in disguise.
    """
    f_plus, f_minus = point.factors()
    return 4.0 / (f_plus.imag**2 * f_minus.imag**2)
