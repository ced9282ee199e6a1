import random

import pytest

from bisiegel import (
    BidiscPoint,
    Mat4R,
    DomainViolation,
    EPoint,
    HPoint,
    Mat2C,
    SYMPLECTIC_FORM,
    approx_eq,
    cayley_to_disc,
    cayley_to_halfspace,
    e_contains,
    h_contains,
    random_hpoint,
    sigma,
    sigma_inv,
)
from bisiegel.domain import (
    BLOCK_SWAP_4,
    CAYLEY_L,
    CAYLEY_L_INV,
    DIAG_ROT_2,
    DIAG_ROT_4,
    EXCHANGE_2,
    EXCHANGE_4,
    SIGNATURE_4,
)
from bisiegel.numkit import (
    block_from_mat4r,
    block_mul,
    block_scale,
    block_transpose,
    max_abs_diff,
)

from conftest import point_gap


def scalar_cayley(w: complex) -> complex:
    """Independent per-factor oracle for the matrix Cayley map."""
    return (w - 1j) / (w + 1j)


# --------------------------------------------------------------------------
# Structural constants


def test_exchange_matrices_are_involutions():
    assert approx_eq(EXCHANGE_2 @ EXCHANGE_2, Mat2C.identity())
    assert max_abs_diff(EXCHANGE_4 @ EXCHANGE_4, Mat4R.identity()) == 0.0


def test_diag_rot_is_orthogonal_and_diagonalizes():
    assert approx_eq(DIAG_ROT_2 @ DIAG_ROT_2.transpose(), Mat2C.identity())
    z = Mat2C.bisym(2j, 1j)
    d = DIAG_ROT_2.transpose() @ z @ DIAG_ROT_2
    assert abs(d.b) < 1e-15 and abs(d.c) < 1e-15
    assert abs(d.a - 3j) < 1e-15 and abs(d.d - 1j) < 1e-15


def test_block_constants_are_symplectic():
    j = SYMPLECTIC_FORM
    for m in (DIAG_ROT_4, EXCHANGE_4):
        assert max_abs_diff(m.transpose() @ j @ m, j) < 1e-15


def test_cayley_conjugator_identities():
    j = block_from_mat4r(SYMPLECTIC_FORM)
    lhs = block_mul(block_mul(block_transpose(CAYLEY_L), j), CAYLEY_L)
    assert _block_gap(lhs, block_scale(2j, j)) < 1e-15
    ident = block_mul(CAYLEY_L, CAYLEY_L_INV)
    assert _block_gap(ident, block_from_mat4r(Mat4R.identity())) < 1e-15
    assert max_abs_diff(SYMPLECTIC_FORM @ SIGNATURE_4, BLOCK_SWAP_4) == 0.0


def _block_gap(x, y) -> float:
    return max(
        max_abs_diff(x[i][j], y[i][j]) for i in range(2) for j in range(2)
    )


# --------------------------------------------------------------------------
# Membership


def test_h_contains_examples():
    assert h_contains(1j, 0)
    assert h_contains(2j, 1j)
    assert not h_contains(1j, 1j)


def test_e_contains_examples():
    assert e_contains(0, 0)
    assert e_contains(0.25, 0.25)
    assert not e_contains(0.5, 0.5)


def test_membership_rejects_nonfinite():
    assert not h_contains(complex(0, float("inf")), 0)
    assert not h_contains(float("nan"), 0)
    assert not e_contains(float("nan"), 0)


def test_point_constructors_enforce_membership():
    with pytest.raises(DomainViolation):
        HPoint(1j, 1j)
    with pytest.raises(DomainViolation):
        EPoint(0.6, 0.6)
    with pytest.raises(DomainViolation):
        BidiscPoint(1.0, 0.0)


# --------------------------------------------------------------------------
# Cayley maps


def test_cayley_base_points():
    assert point_gap_e(cayley_to_disc(HPoint(1j, 0)), EPoint(0, 0)) == 0.0
    assert point_gap(cayley_to_halfspace(EPoint(0, 0)), HPoint(1j, 0)) == 0.0


def point_gap_e(p: EPoint, q: EPoint) -> float:
    return max(abs(p.z1 - q.z1), abs(p.z2 - q.z2))


def test_cayley_scalar_diagonal():
    got = cayley_to_disc(HPoint(2j, 0))
    assert abs(got.z1 - 1.0 / 3.0) < 1e-15 and abs(got.z2) < 1e-15
    back = cayley_to_halfspace(EPoint(1.0 / 3.0, 0))
    assert point_gap(back, HPoint(2j, 0)) < 1e-15


def test_cayley_derived_value_against_factor_oracle():
    z = HPoint(2j, 1j)
    plus, minus = z.factors()
    w_plus, w_minus = scalar_cayley(plus), scalar_cayley(minus)
    expected = EPoint((w_plus + w_minus) / 2, (w_plus - w_minus) / 2)
    got = cayley_to_disc(z)
    assert point_gap_e(got, expected) < 1e-15
    assert abs(got.z1 - 0.25) < 1e-15 and abs(got.z2 - 0.25) < 1e-15
    assert point_gap(cayley_to_halfspace(EPoint(0.25, 0.25)), z) < 1e-14


def test_cayley_matches_factor_oracle_randomly(rng):
    for _ in range(300):
        z = random_hpoint(rng)
        plus, minus = z.factors()
        got = cayley_to_disc(z)
        assert abs((got.z1 + got.z2) - scalar_cayley(plus)) < 1e-12
        assert abs((got.z1 - got.z2) - scalar_cayley(minus)) < 1e-12


def test_cayley_roundtrip_seeded():
    rng = random.Random(987)
    worst = 0.0
    for _ in range(1000):
        z = random_hpoint(rng)
        worst = max(worst, point_gap(cayley_to_halfspace(cayley_to_disc(z)), z))
    assert worst <= 1e-10


def test_cayley_preserves_membership(rng):
    for _ in range(300):
        z = random_hpoint(rng)
        w = cayley_to_disc(z)  # EPoint constructor re-checks membership
        assert e_contains(w.z1, w.z2)
        back = cayley_to_halfspace(w)
        assert h_contains(back.tau, back.z)


# --------------------------------------------------------------------------
# Bidisc coordinates


@pytest.mark.parametrize(
    "z1,z2,w1,w2",
    [
        (0, 0, 0, 0),
        (0.25, 0.25, 0.5, 0),
        (0.3, -0.1, 0.2, 0.4),
    ],
)
def test_sigma_examples(z1, z2, w1, w2):
    w = sigma(EPoint(z1, z2))
    assert w.w1 == pytest.approx(w1, abs=1e-15)
    assert w.w2 == pytest.approx(w2, abs=1e-15)
    back = sigma_inv(BidiscPoint(w1, w2))
    assert abs(back.z1 - z1) < 1e-15 and abs(back.z2 - z2) < 1e-15


def test_sigma_roundtrips(rng):
    for _ in range(200):
        z = cayley_to_disc(random_hpoint(rng))
        there = sigma(z)
        back = sigma_inv(there)
        assert abs(back.z1 - z.z1) < 1e-15 and abs(back.z2 - z.z2) < 1e-15
        again = sigma(back)
        assert abs(again.w1 - there.w1) < 1e-15 and abs(again.w2 - there.w2) < 1e-15


# --------------------------------------------------------------------------
# Serialization and sampling


def test_json_roundtrip():
    z = HPoint(complex(0.5, 2.0), complex(-0.25, 1.0))
    assert HPoint.from_json_dict(z.to_json_dict()) == z
    w = EPoint(complex(0.1, -0.2), complex(0.05, 0.15))
    assert EPoint.from_json_dict(w.to_json_dict()) == w


def test_random_hpoint_is_deterministic_and_in_range():
    a = [random_hpoint(random.Random(5)) for _ in range(50)]
    b = [random_hpoint(random.Random(5)) for _ in range(50)]
    assert a == b
    for z in a:
        plus, minus = z.factors()
        for f in (plus, minus):
            assert 0.1 <= f.imag <= 10.0
            assert -5.0 <= f.real <= 5.0
