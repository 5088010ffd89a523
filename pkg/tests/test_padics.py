"""Scalar layer: p-adic rationals with precision, and the quadratic extension."""

import math
import random
from fractions import Fraction

import pytest

from padic_ladders.errors import (
    DivisionByZero,
    MixedExtension,
    NonPrimeModulus,
    PrecisionExhausted,
)
from padic_ladders.padics import (
    PadicScalar,
    QuadExtScalar,
    padic_arith,
    padic_from_rational,
    padic_valuation,
    quadext_arith,
    quadext_conj,
)

SUPERSINGULAR_PAIRS = [(2, 0), (2, 2), (2, -2), (3, 0), (3, 3), (3, -3), (5, 0), (7, 0)]


def test_from_rational_identity_case():
    x = padic_from_rational(3, 1, 0, 5)
    assert x.value == 1 and x.absprec == 5
    assert repr(x) == "1 + O(3^5)"


def test_from_rational_pure_p_power():
    x = padic_from_rational(3, 1, 1, 5)
    assert x.value == Fraction(1, 3)
    assert padic_valuation(x) == -1


def test_from_rational_exact_six():
    x = padic_from_rational(2, 6, 0, None)
    assert x.is_exact and x.value == 6
    assert padic_valuation(x) == 1


def test_from_rational_rejects_nonprime():
    with pytest.raises(NonPrimeModulus):
        padic_from_rational(4, 1, 0, None)


def test_mul_exact_inverse():
    x = PadicScalar.exact(3, Fraction(1, 3))
    assert padic_arith("mul", x, PadicScalar.exact(3, 3)) == PadicScalar.one(3)


def test_add_below_precision_retains_value():
    x = padic_from_rational(3, 1, 0, 2)
    y = PadicScalar.exact(3, 9)
    z = padic_arith("add", x, y)
    assert z.absprec == 2
    assert z.value == 10  # retained, not reduced
    assert z == padic_from_rational(3, 1, 0, 2)  # equal at precision


def test_div_exact():
    z = padic_arith("div", PadicScalar.exact(2, 6), PadicScalar.exact(2, 2))
    assert z.value == 3 and padic_valuation(z) == 0


def test_div_by_zero():
    with pytest.raises(DivisionByZero):
        padic_arith("div", PadicScalar.one(3), PadicScalar.zero(3))
    with pytest.raises(DivisionByZero):
        padic_arith("div", PadicScalar.one(3), PadicScalar.zero(3, absprec=4))


def test_valuation_examples():
    assert padic_valuation(PadicScalar.exact(2, 6)) == 1
    assert padic_valuation(PadicScalar.exact(3, Fraction(1, 3))) == -1
    assert padic_valuation(PadicScalar.exact(5, 0)) == math.inf


def test_valuation_of_inexact_zero_raises():
    with pytest.raises(PrecisionExhausted):
        padic_valuation(PadicScalar(3, 9, 2))


def test_zero_at_precision_is_canonical():
    x = PadicScalar(3, 9, 2)  # 9 = 0 mod 3^2
    assert x.value == 0 and x.absprec == 2


def test_mixed_primes_rejected():
    with pytest.raises(MixedExtension):
        PadicScalar.one(3) + PadicScalar.one(5)


def test_precision_propagation_mul():
    x = PadicScalar(3, 3, 5)  # v=1, known mod 3^5
    y = PadicScalar(3, Fraction(1, 3), 2)  # v=-1, known mod 3^2
    z = x * y
    assert z.absprec == min(5 + (-1), 2 + 1)  # = 3


def test_reduce_canonicalizes_unit_denominator():
    x = PadicScalar(3, Fraction(1, 2), 4)
    r = x.reduce()
    assert r == x
    assert r.value.denominator == 1  # 1/2 = 41 mod 81


def test_ring_axioms_random_exact():
    rng = random.Random(7)
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        xs = [
            PadicScalar.exact(p, Fraction(rng.randint(-50, 50), p ** rng.randint(0, 3)))
            for _ in range(3)
        ]
        a, b, c = xs
        assert ((a + b) + c).value == (a + (b + c)).value
        assert ((a * b) * c).value == (a * (b * c)).value
        assert (a * (b + c)).value == (a * b + a * c).value


def test_valuation_of_square():
    rng = random.Random(11)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        v = Fraction(rng.randint(1, 60), p ** rng.randint(0, 4))
        x = PadicScalar.exact(p, v * rng.choice([1, -1]))
        assert padic_valuation(x * x) == 2 * padic_valuation(x)


def test_serialization_round_trip():
    x = padic_from_rational(3, 22, 2, 7)
    data = x.to_json()
    assert data == {"num": "22", "den_pow": 2, "absprec": 7}
    assert PadicScalar.from_json(3, data) == x
    e = PadicScalar.exact(2, 5)
    assert PadicScalar.from_json(2, e.to_json()) == e


# -- quadratic extension -------------------------------------------------------


def test_alpha_square_reduction():
    a = QuadExtScalar.alpha(2, 2)
    sq = quadext_arith("mul", a, a)
    assert sq == QuadExtScalar.from_rationals(2, 2, -2, 2)


def test_alpha_norm_is_p():
    for (p, ap) in [(2, 2), (3, -3)]:
        a = QuadExtScalar.alpha(p, ap)
        assert a * quadext_conj(a) == QuadExtScalar.from_rationals(p, ap, p, 0)


def test_conj_examples():
    a = QuadExtScalar.alpha(2, 2)
    assert quadext_conj(a) == QuadExtScalar.from_rationals(2, 2, 2, -1)
    one = QuadExtScalar.one(3, 3)
    assert quadext_conj(one) == one
    a3 = QuadExtScalar.alpha(3, 3)
    assert quadext_conj(a3) * a3 == QuadExtScalar.from_rationals(3, 3, 3, 0)


def test_mixed_extension_rejected():
    with pytest.raises(MixedExtension):
        quadext_arith("add", QuadExtScalar.alpha(2, 2), QuadExtScalar.alpha(2, -2))


def test_conj_involution_and_multiplicative():
    rng = random.Random(13)
    for _ in range(100):
        p, ap = rng.choice([(2, 2), (2, -2), (3, 3), (3, -3), (3, 0)])
        x = QuadExtScalar.from_rationals(p, ap, rng.randint(-9, 9), rng.randint(-9, 9))
        y = QuadExtScalar.from_rationals(p, ap, rng.randint(-9, 9), rng.randint(-9, 9))
        assert quadext_conj(quadext_conj(x)) == x
        assert quadext_conj(x * y) == quadext_conj(x) * quadext_conj(y)


def test_alpha_trace_and_norm_all_pairs():
    for (p, ap) in SUPERSINGULAR_PAIRS:
        a = QuadExtScalar.alpha(p, ap)
        abar = QuadExtScalar.alpha_bar(p, ap)
        assert a + abar == QuadExtScalar.from_rationals(p, ap, ap, 0)
        assert a * abar == QuadExtScalar.from_rationals(p, ap, p, 0)


def test_alpha_negative_powers():
    a = QuadExtScalar.alpha(3, 3)
    assert a.pow_int(-1) * a == QuadExtScalar.one(3, 3)
    assert a.pow_int(-4) * a.pow_int(4) == QuadExtScalar.one(3, 3)


def test_alpha_two_tilde_power_identity():
    # alpha^two_tilde = -p^one_tilde, the scalar shadow of the matrix identity
    from padic_ladders.trace import period_constants

    for (p, ap) in SUPERSINGULAR_PAIRS:
        c = period_constants(p, ap)
        lhs = QuadExtScalar.alpha(p, ap).pow_int(c.two_tilde)
        assert lhs == QuadExtScalar.from_rationals(p, ap, -(Fraction(p) ** c.one_tilde), 0)
