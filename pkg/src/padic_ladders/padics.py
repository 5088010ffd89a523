"""Exact scalar arithmetic: p-adic rationals with precision intervals and Z_p[alpha].

Values are exact rationals.  A scalar either is exact (absprec None, read
"infinite precision") or is known modulo p^absprec.  Precision propagates
conservatively: add/sub take the minimum of the operand precisions, mul/div
shift by valuations.  Nothing ever raises precision.

The quadratic extension adjoins a symbolic root alpha of
X^2 - a_p*X + p; every product is reduced through that relation, and no
embedding of alpha into a completed field is ever chosen.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    DivisionByZero,
    MixedExtension,
    NonPrimeModulus,
    PrecisionExhausted,
    SerializationError,
)

RationalLike = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")
    return p


def rational_valuation(x: Fraction, p: int) -> int:
    """v_p of a nonzero rational."""
    if x == 0:
        raise ValueError("valuation of zero is undefined here")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


class PadicScalar:
    """An element of Q_p known to a stated absolute precision.

    ``value`` is an exact rational representative; ``absprec`` is either None
    (the value is exact) or an integer k meaning the element is only known
    modulo p^k.  An element indistinguishable from 0 at its precision is
    stored with value 0 (the canonical zero-at-precision), so
    v_p(value) < absprec whenever value != 0.
    """

    __slots__ = ("p", "value", "absprec")

    def __init__(self, p: int, value: RationalLike, absprec: Optional[int] = None):
        self.p = p
        v = value if isinstance(value, Fraction) else Fraction(value)
        if absprec is not None:
            absprec = int(absprec)
            if v != 0 and rational_valuation(v, p) >= absprec:
                v = Fraction(0)
        self.value = v
        self.absprec = absprec

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact(cls, p: int, value: RationalLike) -> "PadicScalar":
        return cls(p, value, None)

    @classmethod
    def zero(cls, p: int, absprec: Optional[int] = None) -> "PadicScalar":
        return cls(p, 0, absprec)

    @classmethod
    def one(cls, p: int) -> "PadicScalar":
        return cls(p, 1, None)

    # -- predicates --------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.absprec is None

    def is_zero(self) -> bool:
        """True when the canonical representative is 0 (possibly only at precision)."""
        return self.value == 0

    def is_exact_zero(self) -> bool:
        return self.value == 0 and self.absprec is None

    # -- basic arithmetic ---------------------------------------------------

    def _check_same(self, other: "PadicScalar"):
        if self.p != other.p:
            raise MixedExtension(f"mixed primes {self.p} and {other.p}")

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return PadicScalar(self.p, other, None)
        return NotImplemented

    def _min_absprec(self, other: "PadicScalar") -> Optional[int]:
        if self.absprec is None:
            return other.absprec
        if other.absprec is None:
            return self.absprec
        return min(self.absprec, other.absprec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same(other)
        return PadicScalar(self.p, self.value + other.value, self._min_absprec(other))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same(other)
        return PadicScalar(self.p, self.value - other.value, self._min_absprec(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return PadicScalar(self.p, -self.value, self.absprec)

    def _val_floor(self) -> Optional[int]:
        # Lower bound on the valuation; None means +infinity (exact zero).
        if self.value != 0:
            return rational_valuation(self.value, self.p)
        return self.absprec  # None for exact zero

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same(other)
        if self.is_exact_zero() or other.is_exact_zero():
            return PadicScalar(self.p, 0, None)
        candidates = []
        if self.absprec is not None:
            vo = other._val_floor()
            if vo is not None:
                candidates.append(self.absprec + vo)
        if other.absprec is not None:
            vs = self._val_floor()
            if vs is not None:
                candidates.append(other.absprec + vs)
        absprec = min(candidates) if candidates else None
        return PadicScalar(self.p, self.value * other.value, absprec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same(other)
        if other.value == 0:
            raise DivisionByZero(f"division by {other!r}")
        vo = rational_valuation(other.value, self.p)
        candidates = []
        if self.absprec is not None:
            candidates.append(self.absprec - vo)
        if other.absprec is not None:
            vs = self._val_floor()
            if vs is not None:
                candidates.append(other.absprec + vs - 2 * vo)
        absprec = min(candidates) if candidates else None
        return PadicScalar(self.p, self.value / other.value, absprec)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same(other)
        d = self.value - other.value
        k = self._min_absprec(other)
        if d == 0:
            return True
        if k is None:
            return False
        return rational_valuation(d, self.p) >= k

    __hash__ = None  # equality is at-precision, too fuzzy to hash

    def __repr__(self):
        if self.absprec is None:
            return f"{self.value}"
        return f"{self.value} + O({self.p}^{self.absprec})"

    # -- p-adic structure ----------------------------------------------------

    def valuation(self):
        """v_p of the element; math.inf for exact zero.

        Raises PrecisionExhausted for a zero-at-finite-precision, whose true
        valuation is only bounded below by absprec.
        """
        if self.value != 0:
            return rational_valuation(self.value, self.p)
        if self.absprec is None:
            return math.inf
        raise PrecisionExhausted(
            f"value is 0 mod {self.p}^{self.absprec}; valuation undetermined"
        )

    def reduce(self) -> "PadicScalar":
        """Canonical small representative: unit part reduced mod p^(absprec - v).

        Exact scalars are returned unchanged.  Sound because any representative
        congruent modulo p^absprec denotes the same interval.
        """
        if self.absprec is None or self.value == 0:
            return self
        p = self.p
        v = rational_valuation(self.value, p)
        unit = self.value / Fraction(p) ** v
        modulus = p ** (self.absprec - v)
        num = unit.numerator % modulus
        den_inv = pow(unit.denominator, -1, modulus)
        red = (num * den_inv) % modulus
        return PadicScalar(p, Fraction(red) * Fraction(p) ** v, self.absprec)

    def congruent(self, other, k: int) -> bool:
        """True when self - other has valuation >= k at the tracked precision."""
        other = self._coerce(other)
        self._check_same(other)
        d = self.value - other.value
        if d == 0:
            return True
        return rational_valuation(d, self.p) >= k

    # -- wire format ---------------------------------------------------------

    def to_json(self) -> dict:
        """Encode as {"num": decimal-string, "den_pow": int, "absprec": int|"inf"}.

        Only p-power denominators are encodable; an inexact scalar with a unit
        factor in its denominator is first replaced by its canonical reduced
        representative (same residue class), an exact one cannot be encoded.
        """
        x = self
        den = x.value.denominator
        d = den
        while d % x.p == 0:
            d //= x.p
        if d != 1:
            if x.absprec is None:
                raise SerializationError(
                    f"{x!r} has a unit denominator {d}; not encodable exactly"
                )
            x = x.reduce()
        den = x.value.denominator
        den_pow = 0
        while den % x.p == 0:
            den //= x.p
            den_pow += 1
        assert den == 1
        return {
            "num": str(x.value.numerator),
            "den_pow": den_pow,
            "absprec": "inf" if x.absprec is None else x.absprec,
        }

    @classmethod
    def from_json(cls, p: int, data: dict) -> "PadicScalar":
        absprec = data.get("absprec", "inf")
        absprec = None if absprec in ("inf", None) else int(absprec)
        num = int(data["num"])
        den_pow = int(data.get("den_pow", 0))
        return cls(p, Fraction(num, p ** den_pow), absprec)


# -- spec-level operation wrappers -------------------------------------------


def padic_from_rational(p: int, num: int, den_pow: int, absprec=None) -> PadicScalar:
    """Build num / p^den_pow known modulo p^absprec (None or math.inf: exact)."""
    require_prime(p)
    if den_pow < 0:
        raise ValueError("den_pow must be >= 0")
    if absprec is not None and absprec is not math.inf:
        absprec = int(absprec)
    else:
        absprec = None
    return PadicScalar(p, Fraction(num, p ** den_pow), absprec)


def padic_arith(op: str, x: PadicScalar, y: PadicScalar) -> PadicScalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def padic_valuation(x: PadicScalar):
    return x.valuation()


class QuadExtScalar:
    """a + b*alpha in Z_p[alpha] coordinates, alpha^2 = a_p*alpha - p."""

    __slots__ = ("p", "ap", "a", "b")

    def __init__(self, p: int, ap: int, a: PadicScalar, b: PadicScalar):
        self.p = p
        self.ap = ap
        self.a = a
        self.b = b

    @classmethod
    def from_rationals(cls, p, ap, a=0, b=0, absprec=None) -> "QuadExtScalar":
        return cls(p, ap, PadicScalar(p, a, absprec), PadicScalar(p, b, absprec))

    @classmethod
    def alpha(cls, p, ap) -> "QuadExtScalar":
        return cls.from_rationals(p, ap, 0, 1)

    @classmethod
    def alpha_bar(cls, p, ap) -> "QuadExtScalar":
        """The conjugate root a_p - alpha (= p/alpha)."""
        return cls.from_rationals(p, ap, ap, -1)

    @classmethod
    def one(cls, p, ap) -> "QuadExtScalar":
        return cls.from_rationals(p, ap, 1, 0)

    @classmethod
    def zero(cls, p, ap) -> "QuadExtScalar":
        return cls.from_rationals(p, ap, 0, 0)

    def _check_same(self, other: "QuadExtScalar"):
        if (self.p, self.ap) != (other.p, other.ap):
            raise MixedExtension(
                f"mixed extensions (p, a_p) = ({self.p}, {self.ap}) "
                f"vs ({other.p}, {other.ap})"
            )

    def _coerce(self, other):
        if isinstance(other, QuadExtScalar):
            return other
        if isinstance(other, PadicScalar):
            return QuadExtScalar(self.p, self.ap, other, PadicScalar.zero(self.p))
        if isinstance(other, (int, Fraction)):
            return QuadExtScalar.from_rationals(self.p, self.ap, other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same(other)
        return QuadExtScalar(self.p, self.ap, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same(other)
        return QuadExtScalar(self.p, self.ap, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return QuadExtScalar(self.p, self.ap, -self.a, -self.b)

    def __mul__(self, other):
        # (a1 + b1 A)(a2 + b2 A) with A^2 = ap*A - p
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same(other)
        bb = self.b * other.b
        a = self.a * other.a - bb * self.p
        b = self.a * other.b + self.b * other.a + bb * self.ap
        return QuadExtScalar(self.p, self.ap, a, b)

    __rmul__ = __mul__

    def conj(self) -> "QuadExtScalar":
        """a + b*alpha -> (a + a_p b) - b*alpha."""
        return QuadExtScalar(self.p, self.ap, self.a + self.b * self.ap, -self.b)

    def norm(self) -> PadicScalar:
        """x * conj(x) as a scalar: a^2 + a_p a b + p b^2."""
        return self.a * self.a + self.a * self.b * self.ap + self.b * self.b * self.p

    def inverse(self) -> "QuadExtScalar":
        n = self.norm()
        if n.is_zero():
            raise DivisionByZero(f"{self!r} is not invertible")
        c = self.conj()
        return QuadExtScalar(self.p, self.ap, c.a / n, c.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def pow_int(self, k: int) -> "QuadExtScalar":
        """Integer power, negative exponents through alpha^-1 = conj/p."""
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = QuadExtScalar.one(self.p, self.ap)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same(other)
        return self.a == other.a and self.b == other.b

    __hash__ = None

    def __repr__(self):
        return f"({self.a!r}) + ({self.b!r})*alpha[{self.p},{self.ap}]"

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json()}


def quadext_arith(op: str, x: QuadExtScalar, y: QuadExtScalar) -> QuadExtScalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def quadext_conj(x: QuadExtScalar) -> QuadExtScalar:
    return x.conj()
