"""Fixed-shape matrix kernel: 2x2 complex and 4x4 real.

Everything is immutable and pure.  Inverses of 2x2 matrices use the closed
adjugate formula guarded by a determinant threshold; there is deliberately no
general linear algebra here.  Complex 4x4 matrices only ever appear as 2x2
grids of :class:`Mat2C` blocks, for which a few helpers are provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericalBreakdown, SingularMatrix

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "Mat2C",
    "Mat4R",
    "SYMPLECTIC_FORM",
    "mat2c_inverse",
    "approx_eq",
    "max_abs_diff",
    "block_mul",
    "block_transpose",
    "block_scale",
    "block_max_imag",
    "block_real_mat4r",
    "block_from_mat4r",
]


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class Tolerance:
    """Comparison thresholds.

    ``abs_eps`` bounds entrywise residuals in approximate equalities;
    ``dom_eps`` is the margin for strict inequalities and the singularity
    guard for inverses.
    """

    abs_eps: float = 1e-10
    dom_eps: float = 1e-12

    def __post_init__(self) -> None:
        if not (0.0 < self.dom_eps <= self.abs_eps < 1.0):
            raise ValueError(
                f"need 0 < dom_eps <= abs_eps < 1, got abs_eps={self.abs_eps}, dom_eps={self.dom_eps}"
            )


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Mat2C:
    """2x2 complex matrix [[a, b], [c, d]]."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            v = complex(getattr(self, name))
            if not _finite(v):
                raise NumericalBreakdown(f"non-finite entry {name}={v!r} in 2x2 matrix")
            object.__setattr__(self, name, v)

    @classmethod
    def identity(cls) -> "Mat2C":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def zero(cls) -> "Mat2C":
        return cls(0.0, 0.0, 0.0, 0.0)

    @classmethod
    def diag(cls, x: complex, y: complex) -> "Mat2C":
        return cls(x, 0.0, 0.0, y)

    @classmethod
    def bisym(cls, on_diag: complex, off_diag: complex) -> "Mat2C":
        """Matrix with equal diagonal and equal off-diagonal entries."""
        return cls(on_diag, off_diag, off_diag, on_diag)

    def rows(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return ((self.a, self.b), (self.c, self.d))

    def __add__(self, other: "Mat2C") -> "Mat2C":
        return Mat2C(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2C") -> "Mat2C":
        return Mat2C(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Mat2C":
        return Mat2C(-self.a, -self.b, -self.c, -self.d)

    def __matmul__(self, other: "Mat2C") -> "Mat2C":
        return Mat2C(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, s: complex) -> "Mat2C":
        return Mat2C(s * self.a, s * self.b, s * self.c, s * self.d)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def trace(self) -> complex:
        return self.a + self.d

    def transpose(self) -> "Mat2C":
        return Mat2C(self.a, self.c, self.b, self.d)

    def conj(self) -> "Mat2C":
        return Mat2C(
            self.a.conjugate(), self.b.conjugate(), self.c.conjugate(), self.d.conjugate()
        )

    def max_abs(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def max_imag(self) -> float:
        return max(abs(self.a.imag), abs(self.b.imag), abs(self.c.imag), abs(self.d.imag))

    def real_part(self) -> "Mat2C":
        return Mat2C(self.a.real, self.b.real, self.c.real, self.d.real)

    def inverse(self, tol: Tolerance = DEFAULT_TOL) -> "Mat2C":
        """Closed-form adjugate inverse; rejects |det| at or below the guard."""
        det = self.det()
        if abs(det) <= tol.dom_eps:
            raise SingularMatrix(f"2x2 inverse with |det|={abs(det):.3e} <= {tol.dom_eps}")
        return Mat2C(self.d / det, -self.b / det, -self.c / det, self.a / det)


def mat2c_inverse(m: Mat2C, tol: Tolerance = DEFAULT_TOL) -> Mat2C:
    return m.inverse(tol)


_Row4 = tuple[float, float, float, float]


@dataclass(frozen=True)
class Mat4R:
    """4x4 real matrix stored as a tuple of row tuples."""

    rows: tuple[_Row4, _Row4, _Row4, _Row4]

    def __post_init__(self) -> None:
        rows = tuple(tuple(float(x) for x in row) for row in self.rows)
        if len(rows) != 4 or any(len(row) != 4 for row in rows):
            raise ValueError("Mat4R needs exactly 4 rows of 4 entries")
        for row in rows:
            for x in row:
                if not math.isfinite(x):
                    raise NumericalBreakdown(f"non-finite entry {x!r} in 4x4 matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls) -> "Mat4R":
        return cls(tuple(tuple(1.0 if i == j else 0.0 for j in range(4)) for i in range(4)))

    @classmethod
    def zero(cls) -> "Mat4R":
        return cls(tuple((0.0, 0.0, 0.0, 0.0) for _ in range(4)))

    def __add__(self, other: "Mat4R") -> "Mat4R":
        return Mat4R(
            tuple(
                tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other: "Mat4R") -> "Mat4R":
        return Mat4R(
            tuple(
                tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
            )
        )

    def __neg__(self) -> "Mat4R":
        return Mat4R(tuple(tuple(-x for x in row) for row in self.rows))

    def __matmul__(self, other: "Mat4R") -> "Mat4R":
        cols = tuple(zip(*other.rows))
        return Mat4R(
            tuple(
                tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in self.rows
            )
        )

    def scale(self, s: float) -> "Mat4R":
        return Mat4R(tuple(tuple(s * x for x in row) for row in self.rows))

    def transpose(self) -> "Mat4R":
        return Mat4R(tuple(zip(*self.rows)))

    def max_abs(self) -> float:
        return max(abs(x) for row in self.rows for x in row)

    def blocks(self) -> tuple[Mat2C, Mat2C, Mat2C, Mat2C]:
        """Split into 2x2 blocks (upper-left, upper-right, lower-left, lower-right)."""
        r = self.rows
        return (
            Mat2C(r[0][0], r[0][1], r[1][0], r[1][1]),
            Mat2C(r[0][2], r[0][3], r[1][2], r[1][3]),
            Mat2C(r[2][0], r[2][1], r[3][0], r[3][1]),
            Mat2C(r[2][2], r[2][3], r[3][2], r[3][3]),
        )

    @classmethod
    def from_blocks(cls, ul: Mat2C, ur: Mat2C, ll: Mat2C, lr: Mat2C) -> "Mat4R":
        """Assemble from real-valued 2x2 blocks (imaginary parts must be exact zeros)."""
        for blk in (ul, ur, ll, lr):
            if blk.max_imag() != 0.0:
                raise NumericalBreakdown("from_blocks got a block with nonzero imaginary part")
        return cls(
            (
                (ul.a.real, ul.b.real, ur.a.real, ur.b.real),
                (ul.c.real, ul.d.real, ur.c.real, ur.d.real),
                (ll.a.real, ll.b.real, lr.a.real, lr.b.real),
                (ll.c.real, ll.d.real, lr.c.real, lr.d.real),
            )
        )


#: Standard symplectic form on R^4: [[0, I], [-I, 0]] in 2x2 blocks.
SYMPLECTIC_FORM = Mat4R(
    (
        (0.0, 0.0, 1.0, 0.0),
        (0.0, 0.0, 0.0, 1.0),
        (-1.0, 0.0, 0.0, 0.0),
        (0.0, -1.0, 0.0, 0.0),
    )
)


def approx_eq(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Entrywise comparison: max modulus of the difference at most ``abs_eps``."""
    return max_abs_diff(x, y) <= tol.abs_eps


def max_abs_diff(x, y) -> float:
    """Max entrywise modulus of x - y; works for Mat2C and Mat4R alike."""
    return (x - y).max_abs()


# ---------------------------------------------------------------------------
# Complex 4x4 matrices as 2x2 grids of Mat2C blocks.

Block2 = tuple[tuple[Mat2C, Mat2C], tuple[Mat2C, Mat2C]]


def block_from_mat4r(m: Mat4R) -> Block2:
    ul, ur, ll, lr = m.blocks()
    return ((ul, ur), (ll, lr))


def block_mul(x: Block2, y: Block2) -> Block2:
    return (
        (x[0][0] @ y[0][0] + x[0][1] @ y[1][0], x[0][0] @ y[0][1] + x[0][1] @ y[1][1]),
        (x[1][0] @ y[0][0] + x[1][1] @ y[1][0], x[1][0] @ y[0][1] + x[1][1] @ y[1][1]),
    )


def block_transpose(x: Block2) -> Block2:
    return (
        (x[0][0].transpose(), x[1][0].transpose()),
        (x[0][1].transpose(), x[1][1].transpose()),
    )


def block_scale(s: complex, x: Block2) -> Block2:
    return ((x[0][0].scale(s), x[0][1].scale(s)), (x[1][0].scale(s), x[1][1].scale(s)))


def block_max_imag(x: Block2) -> float:
    return max(blk.max_imag() for row in x for blk in row)


def block_real_mat4r(x: Block2, tol: Tolerance = DEFAULT_TOL) -> Mat4R:
    """Real part of a block matrix whose imaginary residue must stay below ``abs_eps``."""
    residue = block_max_imag(x)
    if residue > tol.abs_eps:
        raise NumericalBreakdown(f"imaginary residue {residue:.3e} exceeds {tol.abs_eps}")
    (ul, ur), (ll, lr) = x
    return Mat4R.from_blocks(
        ul.real_part(), ur.real_part(), ll.real_part(), lr.real_part()
    )
