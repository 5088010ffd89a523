"""Curve fixtures: discriminants, point counts, traces of Frobenius."""

import random

import pytest

from padic_ladders.curves import CurveData, ap, count_points, discriminant, is_supersingular
from padic_ladders.errors import BadReduction
from padic_ladders.trace import period_constants

MORDELL = CurveData(a3=1, a4=-1)            # y^2 + y = x^3 - x
CURVE_755E = CurveData(a3=1, a4=-7, a6=7)   # y^2 + y = x^3 - 7x + 7


def test_discriminant_examples():
    assert discriminant(MORDELL) == 37
    assert discriminant(CurveData(a6=1)) == -432
    assert discriminant(CurveData()) == 0


def test_singular_curve_rejected():
    cusp = CurveData()  # y^2 = x^3
    for p in (2, 3, 5):
        with pytest.raises(BadReduction):
            count_points(cusp, p)


def test_count_points_examples():
    assert count_points(MORDELL, 2) == 5
    assert count_points(CURVE_755E, 2) == 1
    assert count_points(CURVE_755E, 3) == 1


def test_ap_fixtures():
    assert ap(MORDELL, 2) == -2
    assert ap(MORDELL, 3) == -3
    assert ap(CURVE_755E, 2) == 2
    assert ap(CURVE_755E, 3) == 3


def test_bad_reduction_raises():
    with pytest.raises(BadReduction):
        ap(MORDELL, 37)


def test_is_supersingular_examples():
    assert is_supersingular(MORDELL, 2)
    assert is_supersingular(CURVE_755E, 3)
    c = CurveData(a4=1, a6=1)  # y^2 = x^3 + x + 1
    assert is_supersingular(c, 5) == (ap(c, 5) % 5 == 0)


def test_hasse_bound_random_curves():
    rng = random.Random(23)
    found = 0
    while found < 50:
        c = CurveData(*(rng.randint(-4, 4) for _ in range(5)))
        if discriminant(c) == 0:
            continue
        found += 1
        for p in (2, 3, 5, 7):
            if discriminant(c) % p == 0:
                continue
            a = ap(c, p)  # HasseViolation would propagate
            assert a * a <= 4 * p


def test_supersingular_pairs_feed_period_constants():
    rng = random.Random(29)
    checked = 0
    while checked < 30:
        c = CurveData(*(rng.randint(-3, 3) for _ in range(5)))
        if discriminant(c) == 0:
            continue
        for p in (2, 3, 5, 7):
            if discriminant(c) % p == 0:
                continue
            if is_supersingular(c, p):
                period_constants(p, ap(c, p))  # must not raise NotSupersingular
                checked += 1


def test_count_invariant_under_x_translation():
    rng = random.Random(31)
    for _ in range(20):
        c = CurveData(*(rng.randint(-3, 3) for _ in range(5)))
        if discriminant(c) == 0:
            continue
        for p in (2, 3, 5):
            if discriminant(c) % p == 0:
                continue
            base = count_points(c, p)
            for t in range(1, p):
                # x -> x + t gives another long Weierstrass model
                shifted = CurveData(
                    a1=c.a1,
                    a2=c.a2 + 3 * t,
                    a3=c.a3 + c.a1 * t,
                    a4=c.a4 + 2 * c.a2 * t + 3 * t * t,
                    a6=c.a6 + c.a4 * t + c.a2 * t * t + t ** 3,
                )
                assert count_points(shifted, p) == base


def test_conductor_11_model():
    # Externally sourced model (Cremona 11a1), not among the in-text fixtures:
    # y^2 + y = x^3 - x^2 - 10x - 20, included for the conductor-11 trace claim.
    curve_11a1 = CurveData(a2=-1, a3=1, a4=-10, a6=-20)
    assert ap(curve_11a1, 2) == -2
    assert is_supersingular(curve_11a1, 2)
