import random

import pytest

from bisiegel import HalfPlanePoint, HPoint


def hp(w: complex) -> HalfPlanePoint:
    """Half-plane point from a complex number."""
    return HalfPlanePoint(w.real, w.imag)


def point_gap(p: HPoint, q: HPoint) -> float:
    return max(abs(p.tau - q.tau), abs(p.z - q.z))


@pytest.fixture
def rng():
    """Fresh deterministic stream per test."""
    return random.Random(20240613)
