"""The motion group of the bi-symmetric half-space.

Motions are real symplectic 4x4 matrices that commute or anticommute with the
exchange involution; the sign is carried alongside the matrix as ``eps``.
Every block of such a matrix has the patterned form ``[[x1, x2], [eps*x2,
eps*x1]]``, which makes the whole group a glued pair of real Moebius groups:
``split``/``assemble`` translate between a motion and its two 2x2 unimodular
factors, with ``eps = -1`` additionally swapping the two half-plane factors
of the space.

The disc-model motions (complex blocks ``[[A0, B0], [conj B0, conj A0]]``)
are what the transitivity and stabilizer constructions naturally produce;
they are converted back to real matrices by conjugating with the Cayley
blocks and dropping an imaginary residue that must vanish up to tolerance.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from math import cos, exp, pi, sin, sqrt

from .domain import (
    CAYLEY_L,
    CAYLEY_L_INV,
    EXCHANGE_4,
    EPoint,
    HPoint,
    cayley_to_disc,
)
from .errors import (
    MalformedBlocks,
    NotInHatGroup,
    NotPositiveDefinite,
    NotSymplectic,
    NotUnimodular,
    NumericalBreakdown,
    SingularMatrix,
    UnitModulusViolation,
    ValidationError,
)
from .numkit import (
    DEFAULT_TOL,
    SYMPLECTIC_FORM,
    Block2,
    Mat2C,
    Mat4R,
    Tolerance,
    block_mul,
    block_real_mat4r,
    max_abs_diff,
)

__all__ = [
    "Sl2Matrix",
    "MotionMatrix",
    "DiscMotion",
    "StabilizerParams",
    "ReducedPair",
    "classify",
    "apply",
    "split",
    "assemble",
    "stabilizer_of_center",
    "stabilizer_of_iI",
    "bisym_normalizer",
    "transport_to_center",
    "transport_to_iI",
    "reduce_pair",
    "random_sl2",
    "random_motion",
]


@dataclass(frozen=True)
class Sl2Matrix:
    """Real 2x2 matrix of determinant one (a Moebius factor)."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        vals = tuple(float(getattr(self, n)) for n in "abcd")
        for n, v in zip("abcd", vals):
            object.__setattr__(self, n, v)
        det = vals[0] * vals[3] - vals[1] * vals[2]
        if abs(det - 1.0) > DEFAULT_TOL.abs_eps:
            raise NotUnimodular(f"det={det!r} differs from 1 beyond tolerance")

    @classmethod
    def identity(cls) -> "Sl2Matrix":
        return cls(1.0, 0.0, 0.0, 1.0)

    def __matmul__(self, other: "Sl2Matrix") -> "Sl2Matrix":
        return Sl2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Sl2Matrix":
        return Sl2Matrix(self.d, -self.b, -self.c, self.a)

    def to_json_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Sl2Matrix":
        return cls(doc["a"], doc["b"], doc["c"], doc["d"])


def _commutation_residues(m: Mat4R) -> tuple[float, float]:
    mq = m @ EXCHANGE_4
    qm = EXCHANGE_4 @ m
    return max_abs_diff(mq, qm), (mq + qm).max_abs()


@dataclass(frozen=True)
class MotionMatrix:
    """A motion: real symplectic 4x4 matrix plus its exchange sign."""

    m: Mat4R
    eps: int

    def __post_init__(self) -> None:
        if self.eps not in (1, -1):
            raise ValidationError(f"eps must be +1 or -1, got {self.eps!r}")
        object.__setattr__(self, "eps", int(self.eps))
        j = SYMPLECTIC_FORM
        sym_res = max_abs_diff(self.m.transpose() @ j @ self.m, j)
        if sym_res > DEFAULT_TOL.abs_eps:
            raise NotSymplectic(f"symplectic residual {sym_res:.3e}")
        commute, anticommute = _commutation_residues(self.m)
        res = commute if self.eps == 1 else anticommute
        if res > DEFAULT_TOL.abs_eps:
            raise NotInHatGroup(f"exchange-commutation residual {res:.3e} for eps={self.eps}")

    @classmethod
    def identity(cls) -> "MotionMatrix":
        return cls(Mat4R.identity(), 1)

    def blocks(self) -> tuple[Mat2C, Mat2C, Mat2C, Mat2C]:
        return self.m.blocks()

    def __matmul__(self, other: "MotionMatrix") -> "MotionMatrix":
        return MotionMatrix(self.m @ other.m, self.eps * other.eps)

    def inverse(self) -> "MotionMatrix":
        # For symplectic M the inverse is -J M^T J; the sign is preserved.
        j = SYMPLECTIC_FORM
        return MotionMatrix((j @ self.m.transpose() @ j).scale(-1.0), self.eps)

    def __call__(self, point: HPoint, tol: Tolerance = DEFAULT_TOL) -> HPoint:
        return apply(self, point, tol)

    def to_json_dict(self) -> dict:
        return {"m": [list(row) for row in self.m.rows], "eps": self.eps}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "MotionMatrix":
        m = Mat4R(tuple(tuple(row) for row in doc["m"]))
        detected = classify(m)
        if "eps" in doc and int(doc["eps"]) != detected.eps:
            raise ValidationError(
                f"declared eps={doc['eps']} contradicts detected eps={detected.eps}"
            )
        return detected


def classify(m: Mat4R, tol: Tolerance = DEFAULT_TOL) -> MotionMatrix:
    """Validate a raw 4x4 matrix as a motion and detect its exchange sign.

    The sign is the one with the smaller commutation residual; an exact tie
    resolves to +1 (only near-kernel matrices come close to a tie).
    """
    j = SYMPLECTIC_FORM
    sym_res = max_abs_diff(m.transpose() @ j @ m, j)
    if sym_res > tol.abs_eps:
        raise NotSymplectic(f"symplectic residual {sym_res:.3e} exceeds {tol.abs_eps}")
    commute, anticommute = _commutation_residues(m)
    eps = 1 if commute <= anticommute else -1
    if min(commute, anticommute) > tol.abs_eps:
        raise NotInHatGroup(
            f"commutation residuals ({commute:.3e}, {anticommute:.3e}) both exceed {tol.abs_eps}"
        )
    return MotionMatrix(m, eps)


def apply(motion: MotionMatrix, point: HPoint, tol: Tolerance = DEFAULT_TOL) -> HPoint:
    """Act on a half-space point: (A Z + B)(C Z + D)^-1."""
    a, b, c, d = motion.blocks()
    zm = point.as_matrix()
    den = c @ zm + d
    if abs(den.det()) <= tol.dom_eps:
        raise SingularMatrix(f"action denominator |det|={abs(den.det()):.3e}")
    w = (a @ zm + b) @ den.inverse(tol)
    # The image of a bi-symmetric point is bi-symmetric; averaging removes
    # the rounding skew.
    return HPoint((w.a + w.d) / 2.0, (w.b + w.c) / 2.0)


def _block_pattern_residual(block: Mat2C, eps: int) -> float:
    return max(abs(block.c - eps * block.b), abs(block.d - eps * block.a))


def split(motion: MotionMatrix, tol: Tolerance = DEFAULT_TOL) -> tuple[Sl2Matrix, Sl2Matrix]:
    """Unglue a motion into its two unimodular 2x2 factors.

    Reads the top row of each patterned block; the factors act on the two
    half-plane coordinates (tau + z, tau - z), in that order for eps = +1 and
    swapped for eps = -1.
    """
    blocks = motion.blocks()
    res = max(_block_pattern_residual(blk, motion.eps) for blk in blocks)
    if res > tol.abs_eps:
        raise MalformedBlocks(f"block pattern residual {res:.3e} for eps={motion.eps}")
    a, b, c, d = blocks
    try:
        m1 = Sl2Matrix(
            (a.a + a.b).real, (b.a + b.b).real, (c.a + c.b).real, (d.a + d.b).real
        )
        m2 = Sl2Matrix(
            (a.a - a.b).real, (b.a - b.b).real, (c.a - c.b).real, (d.a - d.b).real
        )
    except NotUnimodular as exc:
        raise MalformedBlocks(f"factor determinant drifted from 1: {exc}") from exc
    return m1, m2


def assemble(m1: Sl2Matrix, m2: Sl2Matrix, eps: int, tol: Tolerance = DEFAULT_TOL) -> MotionMatrix:
    """Glue two unimodular factors (and a sign) back into a motion."""

    def patterned(x1: float, x2: float) -> Mat2C:
        return Mat2C(x1, x2, eps * x2, eps * x1)

    a = patterned((m1.a + m2.a) / 2.0, (m1.a - m2.a) / 2.0)
    b = patterned((m1.b + m2.b) / 2.0, (m1.b - m2.b) / 2.0)
    c = patterned((m1.c + m2.c) / 2.0, (m1.c - m2.c) / 2.0)
    d = patterned((m1.d + m2.d) / 2.0, (m1.d - m2.d) / 2.0)
    return MotionMatrix(Mat4R.from_blocks(a, b, c, d), eps)


@dataclass(frozen=True)
class StabilizerParams:
    """Two unit-circle rotation parameters and an exchange sign."""

    xi1: complex
    xi2: complex
    eps: int = 1

    def __post_init__(self) -> None:
        xi1, xi2 = complex(self.xi1), complex(self.xi2)
        for name, xi in (("xi1", xi1), ("xi2", xi2)):
            if abs(abs(xi) - 1.0) > DEFAULT_TOL.abs_eps:
                raise UnitModulusViolation(f"|{name}|={abs(xi)!r} is not 1")
        if self.eps not in (1, -1):
            raise ValidationError(f"eps must be +1 or -1, got {self.eps!r}")
        object.__setattr__(self, "xi1", xi1)
        object.__setattr__(self, "xi2", xi2)
        object.__setattr__(self, "eps", int(self.eps))


@dataclass(frozen=True)
class DiscMotion:
    """Disc-model motion [[A0, B0], [conj B0, conj A0]] with exchange sign."""

    a0: Mat2C
    b0: Mat2C
    eps: int

    def __post_init__(self) -> None:
        if self.eps not in (1, -1):
            raise ValidationError(f"eps must be +1 or -1, got {self.eps!r}")
        object.__setattr__(self, "eps", int(self.eps))
        a0, b0 = self.a0, self.b0
        rel1 = max_abs_diff(a0 @ a0.conj().transpose() - b0 @ b0.conj().transpose(), Mat2C.identity())
        rel2 = max_abs_diff(a0 @ b0.transpose(), b0 @ a0.transpose())
        if max(rel1, rel2) > DEFAULT_TOL.abs_eps:
            raise NotSymplectic(f"disc-model block relations violated by {max(rel1, rel2):.3e}")
        pat = max(_block_pattern_residual(a0, self.eps), _block_pattern_residual(b0, self.eps))
        if pat > DEFAULT_TOL.abs_eps:
            raise NotInHatGroup(f"disc-model exchange pattern violated by {pat:.3e}")

    def matrix_blocks(self) -> Block2:
        return ((self.a0, self.b0), (self.b0.conj(), self.a0.conj()))

    def apply(self, point: EPoint, tol: Tolerance = DEFAULT_TOL) -> EPoint:
        zm = point.as_matrix()
        den = self.b0.conj() @ zm + self.a0.conj()
        if abs(den.det()) <= tol.dom_eps:
            raise SingularMatrix(f"disc action denominator |det|={abs(den.det()):.3e}")
        w = (self.a0 @ zm + self.b0) @ den.inverse(tol)
        return EPoint((w.a + w.d) / 2.0, (w.b + w.c) / 2.0)

    def to_halfspace(self, tol: Tolerance = DEFAULT_TOL) -> MotionMatrix:
        """Conjugate by the Cayley blocks into a real motion matrix.

        The product is real up to rounding; the imaginary residue is checked
        against ``abs_eps`` before it is dropped.
        """
        conj = block_mul(block_mul(CAYLEY_L, self.matrix_blocks()), CAYLEY_L_INV)
        m4 = block_real_mat4r(conj, tol)
        try:
            return MotionMatrix(m4, self.eps)
        except ValidationError as exc:
            raise NumericalBreakdown(f"conjugated motion failed validation: {exc}") from exc

    def to_json_dict(self) -> dict:
        def entries(m: Mat2C) -> list:
            return [
                [[m.a.real, m.a.imag], [m.b.real, m.b.imag]],
                [[m.c.real, m.c.imag], [m.d.real, m.d.imag]],
            ]

        return {"a0": entries(self.a0), "b0": entries(self.b0), "eps": self.eps}


def stabilizer_of_center(params: StabilizerParams, tol: Tolerance = DEFAULT_TOL) -> DiscMotion:
    """Disc-model motion fixing the center of the bounded model.

    In factor coordinates it rotates the two discs by xi1^2 and xi2^2
    (swapped when eps = -1); the parameters themselves are the entries of
    the patterned unitary block, two-to-one onto the rotations.
    """
    half_sum = (params.xi1 + params.xi2) / 2.0
    half_diff = (params.xi1 - params.xi2) / 2.0
    a0 = Mat2C(half_sum, half_diff, params.eps * half_diff, params.eps * half_sum)
    return DiscMotion(a0, Mat2C.zero(), params.eps)


def stabilizer_of_iI(params: StabilizerParams, tol: Tolerance = DEFAULT_TOL) -> MotionMatrix:
    """Real motion fixing the base point iI of the half-space model."""
    return stabilizer_of_center(params, tol).to_halfspace(tol)


def bisym_normalizer(k1: float, k2: float, eps: int = 1, tol: Tolerance = DEFAULT_TOL) -> Mat2C:
    """Real patterned K0 with K0 K K0^T = I for K = [[k1, k2], [k2, k1]] > 0.

    Uses the canonical positive branch of the two square roots; ``eps`` picks
    the sign pattern of the bottom row.
    """
    k1, k2 = float(k1), float(k2)
    if not k1 > abs(k2) + tol.dom_eps:
        raise NotPositiveDefinite(f"k1={k1!r} must exceed |k2|={abs(k2)!r}")
    s_plus = 1.0 / sqrt(k1 + k2)
    s_minus = 1.0 / sqrt(k1 - k2)
    x1 = (s_plus + s_minus) / 2.0
    x2 = (s_plus - s_minus) / 2.0
    return Mat2C(x1, x2, eps * x2, eps * x1)


def transport_to_center(point: EPoint, tol: Tolerance = DEFAULT_TOL) -> DiscMotion:
    """Disc-model motion sending the given bounded-model point to the center.

    A0 normalizes I - Z0 conj(Z0) and B0 = -A0 Z0; the result is the
    canonical (eps = +1, positive-branch) transport used everywhere else.
    """
    zm = point.as_matrix()
    k = Mat2C.identity() - zm @ zm.conj()
    if k.max_imag() > tol.abs_eps:
        raise NumericalBreakdown(f"Gram matrix imaginary residue {k.max_imag():.3e}")
    k1 = (k.a.real + k.d.real) / 2.0
    k2 = (k.b.real + k.c.real) / 2.0
    a0 = bisym_normalizer(k1, k2, 1, tol)
    b0 = -(a0 @ zm)
    try:
        return DiscMotion(a0, b0, 1)
    except ValidationError as exc:
        raise NumericalBreakdown(f"transport failed validation: {exc}") from exc


def transport_to_iI(point: HPoint, tol: Tolerance = DEFAULT_TOL) -> MotionMatrix:
    """Real motion sending the given half-space point to iI (identity at iI)."""
    return transport_to_center(cayley_to_disc(point, tol), tol).to_halfspace(tol)


@dataclass(frozen=True)
class ReducedPair:
    """Canonical form of an ordered point pair: the motion taking the first
    point to iI and the second to i*[[lambda1, lambda2], [lambda2, lambda1]]."""

    mover: MotionMatrix
    lambda1: float
    lambda2: float

    def __post_init__(self) -> None:
        l1, l2 = float(self.lambda1), float(self.lambda2)
        if l2 < -DEFAULT_TOL.abs_eps or l1 < l2 + 1.0 - DEFAULT_TOL.abs_eps:
            raise ValidationError(f"invalid canonical pair (lambda1={l1!r}, lambda2={l2!r})")
        object.__setattr__(self, "lambda1", l1)
        object.__setattr__(self, "lambda2", l2)


def _half_conj_phase(w: complex) -> complex:
    """e^{-i arg(w) / 2}, defined as 1 at the origin.

    The disc stabilizer with parameters (xi1, xi2) rotates the two disc
    factors by the squares xi1^2, xi2^2 (numerator and denominator of its
    action each contribute one unit-modulus factor), so aligning a factor
    onto the positive real axis needs half its phase.
    """
    if abs(w) == 0.0:
        return complex(1.0, 0.0)
    return cmath.exp(-0.5j * cmath.phase(w))


def _pair_dilation(h1: complex, h2: complex) -> float:
    """Dilation >= 1 carrying the half-plane pair (h1, h2) to (i, lam*i)."""
    ratio = (h1.imag ** 2 + h2.imag ** 2 + (h1.real - h2.real) ** 2) / (
        h1.imag * h2.imag
    )
    return max((ratio + sqrt(max(ratio * ratio - 4.0, 0.0))) / 2.0, 1.0)


def reduce_pair(z_base: HPoint, z_other: HPoint, tol: Tolerance = DEFAULT_TOL) -> ReducedPair:
    """Reduce an ordered pair of half-space points to canonical position.

    First transport ``z_base`` to iI, then rotate the two disc factors of
    the image of ``z_other`` onto the nonnegative real axis, with the larger
    radius in the first slot (ties keep the factor order; a swap is realized
    by an eps = -1 rotation).  The moved radii satisfy
    (1 + r)/(1 - r) = per-factor dilation, so the canonical entries

        lambda1 = (1 - r1 r2) / ((1 - r1)(1 - r2)) = (lam_big + lam_small)/2,
        lambda2 = (r1 - r2) / ((1 - r1)(1 - r2))   = (lam_big - lam_small)/2

    are computed from the dilations of the raw pair, which stay accurate
    where 1 - r has cancelled to the last few bits; they are independent of
    every internal choice.
    """
    mover_a = transport_to_iI(z_base, tol)
    moved = apply(mover_a, z_other, tol)
    # Scalar per-factor Cayley transform for the aligning phases; deliberately
    # not routed through the bounded-model membership gate so near-boundary
    # radii surface as a numerical breakdown rather than a domain violation.
    h_plus, h_minus = moved.factors()
    f_plus = (h_plus - 1j) / (h_plus + 1j)
    f_minus = (h_minus - 1j) / (h_minus + 1j)
    b_plus, b_minus = z_base.factors()
    o_plus, o_minus = z_other.factors()
    lam_plus = _pair_dilation(b_plus, o_plus)
    lam_minus = _pair_dilation(b_minus, o_minus)
    swap = lam_plus < lam_minus
    lam_big, lam_small = (lam_minus, lam_plus) if swap else (lam_plus, lam_minus)
    r_big = (lam_big - 1.0) / (lam_big + 1.0)
    if r_big >= 1.0 - tol.dom_eps:
        raise NumericalBreakdown(f"factor radius {r_big!r} too close to the boundary")
    params = StabilizerParams(
        _half_conj_phase(f_plus), _half_conj_phase(f_minus), -1 if swap else 1
    )
    mover = stabilizer_of_iI(params, tol) @ mover_a
    return ReducedPair(mover, (lam_big + lam_small) / 2.0, (lam_big - lam_small) / 2.0)


def random_sl2(rng: random.Random) -> Sl2Matrix:
    """Seeded unimodular sample: rotation times upper-triangular.

    Draw order: angle uniform in [0, 2pi), log-scale uniform in [-1, 1],
    shear uniform in [-2, 2].
    """
    theta = rng.uniform(0.0, 2.0 * pi)
    lam = exp(rng.uniform(-1.0, 1.0))
    mu = rng.uniform(-2.0, 2.0)
    ct, st = cos(theta), sin(theta)
    # [[ct, st], [-st, ct]] @ [[lam, mu], [0, 1/lam]]
    return Sl2Matrix(ct * lam, ct * mu + st / lam, -st * lam, -st * mu + ct / lam)


def random_motion(rng: random.Random) -> MotionMatrix:
    """Seeded motion sample: two factors then a fair exchange sign."""
    m1 = random_sl2(rng)
    m2 = random_sl2(rng)
    eps = 1 if rng.random() < 0.5 else -1
    return assemble(m1, m2, eps)
