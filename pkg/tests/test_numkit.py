import math
import random

import pytest

from bisiegel import Mat2C, Mat4R, SingularMatrix, Tolerance, approx_eq, mat2c_inverse
from bisiegel.errors import NumericalBreakdown
from bisiegel.numkit import (
    block_from_mat4r,
    block_max_imag,
    block_mul,
    block_real_mat4r,
    block_scale,
    block_transpose,
    max_abs_diff,
)


def test_tolerance_defaults_and_validation():
    tol = Tolerance()
    assert tol.abs_eps == 1e-10 and tol.dom_eps == 1e-12
    with pytest.raises(ValueError):
        Tolerance(abs_eps=1e-12, dom_eps=1e-10)
    with pytest.raises(ValueError):
        Tolerance(abs_eps=2.0)


def test_inverse_identity():
    assert approx_eq(mat2c_inverse(Mat2C.identity()), Mat2C.identity())


def test_inverse_scalar_diagonal():
    m = Mat2C.diag(2j, 2j)
    assert approx_eq(mat2c_inverse(m), Mat2C.diag(-0.5j, -0.5j))


def test_inverse_unipotent():
    m = Mat2C(1, 1, 0, 1)
    assert approx_eq(mat2c_inverse(m), Mat2C(1, -1, 0, 1))


def test_inverse_rejects_singular():
    with pytest.raises(SingularMatrix):
        mat2c_inverse(Mat2C(1, 1, 1, 1))


def test_inverse_involution_property():
    rng = random.Random(101)
    tol = Tolerance()
    for _ in range(200):
        m = Mat2C(*(complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(4)))
        if abs(m.det()) < 1e-3:
            continue
        assert max_abs_diff(mat2c_inverse(mat2c_inverse(m)), m) <= 10 * tol.abs_eps


def test_det_multiplicative():
    rng = random.Random(202)
    for _ in range(200):
        a = Mat2C(*(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)))
        b = Mat2C(*(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)))
        lhs = (a @ b).det()
        rhs = a.det() * b.det()
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_approx_eq_examples():
    eye = Mat2C.identity()
    assert approx_eq(eye, eye)
    assert not approx_eq(eye, eye + Mat2C.identity().scale(1e-6))
    assert approx_eq(Mat2C.zero(), Mat2C.identity().scale(1e-12))


def test_nonfinite_entries_rejected():
    with pytest.raises(NumericalBreakdown):
        Mat2C(float("nan"), 0, 0, 1)
    with pytest.raises(NumericalBreakdown):
        Mat4R(((float("inf"), 0, 0, 0),) + ((0.0, 0.0, 0.0, 0.0),) * 3)


def test_mat4r_product_and_transpose():
    rng = random.Random(303)
    a = Mat4R(tuple(tuple(rng.uniform(-1, 1) for _ in range(4)) for _ in range(4)))
    b = Mat4R(tuple(tuple(rng.uniform(-1, 1) for _ in range(4)) for _ in range(4)))
    # (AB)^T = B^T A^T
    assert max_abs_diff((a @ b).transpose(), b.transpose() @ a.transpose()) < 1e-14
    assert max_abs_diff(a @ Mat4R.identity(), a) == 0.0


def test_mat4r_blocks_roundtrip():
    rng = random.Random(404)
    m = Mat4R(tuple(tuple(rng.uniform(-1, 1) for _ in range(4)) for _ in range(4)))
    assert max_abs_diff(Mat4R.from_blocks(*m.blocks()), m) == 0.0


def test_block_algebra_matches_mat4r():
    rng = random.Random(505)
    a = Mat4R(tuple(tuple(rng.uniform(-1, 1) for _ in range(4)) for _ in range(4)))
    b = Mat4R(tuple(tuple(rng.uniform(-1, 1) for _ in range(4)) for _ in range(4)))
    via_blocks = block_real_mat4r(block_mul(block_from_mat4r(a), block_from_mat4r(b)))
    assert max_abs_diff(via_blocks, a @ b) < 1e-13
    assert (
        max_abs_diff(
            block_real_mat4r(block_transpose(block_from_mat4r(a))), a.transpose()
        )
        == 0.0
    )


def test_block_scale_and_imag_guard():
    blk = block_scale(1j, block_from_mat4r(Mat4R.identity()))
    assert block_max_imag(blk) == 1.0
    with pytest.raises(NumericalBreakdown):
        block_real_mat4r(blk)


def test_bisym_constructor():
    m = Mat2C.bisym(2j, 1j)
    assert m.a == m.d == 2j and m.b == m.c == 1j
    assert abs(m.trace() - 4j) == 0.0
    assert math.isclose(abs(m.det() - (-3.0)), 0.0, abs_tol=1e-15)
