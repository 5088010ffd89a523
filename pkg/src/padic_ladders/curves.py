"""Curve fixtures: point counts over F_p for long Weierstrass models.

Long form y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 is mandatory;
the short form degenerates at p = 2, 3, which are exactly the primes where
a_p != 0 can happen for a supersingular curve.  Counting is exhaustive
O(p^2); only small p matters here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadReduction, HasseViolation
from .padics import require_prime


@dataclass(frozen=True)
class CurveData:
    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0


def discriminant(c: CurveData) -> int:
    b2 = c.a1 * c.a1 + 4 * c.a2
    b4 = 2 * c.a4 + c.a1 * c.a3
    b6 = c.a3 * c.a3 + 4 * c.a6
    b8 = (
        c.a1 * c.a1 * c.a6
        + 4 * c.a2 * c.a6
        - c.a1 * c.a3 * c.a4
        + c.a2 * c.a3 * c.a3
        - c.a4 * c.a4
    )
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _require_good_reduction(c: CurveData, p: int):
    require_prime(p)
    if discriminant(c) % p == 0:
        raise BadReduction(f"p = {p} divides the discriminant {discriminant(c)}")


def count_points(c: CurveData, p: int) -> int:
    """#E(F_p): affine solutions by exhaustive enumeration, plus infinity."""
    _require_good_reduction(c, p)
    count = 1
    for x in range(p):
        rhs = (x * x * x + c.a2 * x * x + c.a4 * x + c.a6) % p
        for y in range(p):
            if (y * y + c.a1 * x * y + c.a3 * y) % p == rhs:
                count += 1
    return count


def ap(c: CurveData, p: int) -> int:
    """Trace of Frobenius p + 1 - #E(F_p), with the Hasse bound asserted."""
    a = p + 1 - count_points(c, p)
    if a * a > 4 * p:
        raise HasseViolation(f"a_{p} = {a} violates |a_p| <= 2 sqrt({p})")
    return a


def is_supersingular(c: CurveData, p: int) -> bool:
    return ap(c, p) % p == 0
