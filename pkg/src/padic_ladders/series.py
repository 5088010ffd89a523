"""Truncated power series and polynomials over PadicScalar.

Includes the p-power cyclotomic polynomials Phi_j(1+X), omega_n, quotient
reduction against monic exact moduli (the level-n Iwasawa algebra is plain
polynomial remainder arithmetic), exact division, Gauss norms at radii
p^(-s), and the p-adic logarithm series.

A series with ``cap`` None is a polynomial: every untracked coefficient is
exactly zero.  A series with integer ``cap`` is known modulo X^cap; where an
operation needs coefficients past the cap it treats the series as the
polynomial spanned by its tracked coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import InexactDivision, PrecisionExhausted
from .padics import PadicScalar, require_prime

ScalarLike = Union[int, Fraction, PadicScalar]


class PowerSeries:
    """Coefficients indexed 0..cap-1 over a common prime p."""

    __slots__ = ("p", "coeffs", "cap")

    def __init__(self, p: int, coeffs: Iterable[ScalarLike], cap: Optional[int] = None):
        cs = []
        for c in coeffs:
            if not isinstance(c, PadicScalar):
                c = PadicScalar(p, c)
            elif c.p != p:
                raise ValueError("coefficient prime mismatch")
            cs.append(c)
        if cap is not None:
            cap = int(cap)
            if cap < 0:
                raise ValueError("cap must be >= 0")
            del cs[cap:]
        # strip trailing exact zeros; inexact zeros stay tracked
        while cs and cs[-1].is_exact_zero():
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)
        self.cap = cap

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, p: int, cap: Optional[int] = None) -> "PowerSeries":
        return cls(p, [], cap)

    @classmethod
    def one(cls, p: int) -> "PowerSeries":
        return cls(p, [1])

    @classmethod
    def x_power(cls, p: int, k: int, coeff: ScalarLike = 1) -> "PowerSeries":
        return cls(p, [0] * k + [coeff])

    # -- structure -----------------------------------------------------------

    @property
    def is_polynomial(self) -> bool:
        return self.cap is None

    def coefficient(self, k: int) -> PadicScalar:
        if self.cap is not None and k >= self.cap:
            raise PrecisionExhausted(f"coefficient {k} is beyond cap {self.cap}")
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return PadicScalar.zero(self.p)

    def degree(self) -> int:
        """Largest index with a nonzero tracked coefficient; -1 for zero."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[k].is_zero():
                return k
        return -1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.coeffs)

    def _cap_min(self, other: "PowerSeries") -> Optional[int]:
        if self.cap is None:
            return other.cap
        if other.cap is None:
            return self.cap
        return min(self.cap, other.cap)

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction, PadicScalar)):
            return PowerSeries(self.p, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        out = [self.coefficient_raw(k) + other.coefficient_raw(k) for k in range(n)]
        return PowerSeries(self.p, out, self._cap_min(other))

    __radd__ = __add__

    def coefficient_raw(self, k: int) -> PadicScalar:
        # like coefficient() but silently exact-zero past the cap; internal use
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return PadicScalar.zero(self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        out = [self.coefficient_raw(k) - other.coefficient_raw(k) for k in range(n)]
        return PowerSeries(self.p, out, self._cap_min(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return PowerSeries(self.p, [-c for c in self.coeffs], self.cap)

    def scale(self, s: ScalarLike) -> "PowerSeries":
        if not isinstance(s, PadicScalar):
            s = PadicScalar(self.p, s)
        return PowerSeries(self.p, [c * s for c in self.coeffs], self.cap)

    def mul(self, other: "PowerSeries", cap: Optional[int] = None) -> "PowerSeries":
        """Product truncated at X^cap (and at the operands' own caps)."""
        other = self._coerce(other)
        caps = [c for c in (self.cap, other.cap, cap) if c is not None]
        eff = min(caps) if caps else None
        if eff is None:
            n = len(self.coeffs) + len(other.coeffs) - 1 if self.coeffs and other.coeffs else 0
        else:
            n = min(eff, len(self.coeffs) + len(other.coeffs) - 1 if self.coeffs and other.coeffs else 0)
        out = [PadicScalar.zero(self.p) for _ in range(max(n, 0))]
        for i, ci in enumerate(self.coeffs):
            if ci.is_exact_zero():
                continue
            for j, cj in enumerate(other.coeffs):
                k = i + j
                if eff is not None and k >= eff:
                    break
                if k < len(out):
                    out[k] = out[k] + ci * cj
        return PowerSeries(self.p, out, eff)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return self.scale(other)
        if isinstance(other, PowerSeries):
            return self.mul(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return self.scale(other)
        return NotImplemented

    def truncate(self, cap: int) -> "PowerSeries":
        if self.cap is not None and self.cap <= cap:
            return self
        return PowerSeries(self.p, self.coeffs[:cap], cap)

    def reduce_coeffs(self) -> "PowerSeries":
        """Replace every coefficient by its canonical reduced representative."""
        return PowerSeries(self.p, [c.reduce() for c in self.coeffs], self.cap)

    def congruent(self, other: "PowerSeries", k: int, upto: Optional[int] = None) -> bool:
        """Coefficientwise congruence mod p^k on the shared tracked range."""
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        eff = self._cap_min(other)
        if eff is not None:
            n = min(n, eff)
        if upto is not None:
            n = min(n, upto)
        return all(
            self.coefficient_raw(i).congruent(other.coefficient_raw(i), k)
            for i in range(n)
        )

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        eff = self._cap_min(other)
        if eff is not None:
            n = min(n, eff)
        return all(
            self.coefficient_raw(i) == other.coefficient_raw(i) for i in range(n)
        )

    __hash__ = None

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero() and c.is_exact:
                continue
            terms.append(f"({c!r})*X^{k}")
        body = " + ".join(terms) if terms else "0"
        tail = f" + O(X^{self.cap})" if self.cap is not None else ""
        return body + tail

    # -- wire format -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "cap": self.cap,
            "coeffs": [c.to_json() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PowerSeries":
        p = int(data["p"])
        cap = data.get("cap")
        cap = None if cap in (None, "inf") else int(cap)
        coeffs = [PadicScalar.from_json(p, c) for c in data.get("coeffs", [])]
        return cls(p, coeffs, cap)

    def to_csv_rows(self) -> list:
        """Rows (degree, numerator, den_pow, absprec) per tracked coefficient."""
        rows = []
        for k, c in enumerate(self.coeffs):
            j = c.to_json()
            rows.append((k, j["num"], j["den_pow"], j["absprec"]))
        return rows


# -- cyclotomic building blocks ----------------------------------------------


def phi(p: int, j: int) -> PowerSeries:
    """Phi_j(1+X) = sum_{t<p} (1+X)^(p^(j-1) t): monic, constant term p."""
    require_prime(p)
    if j < 1:
        raise ValueError("j must be >= 1")
    deg = p ** (j - 1) * (p - 1)
    out = [0] * (deg + 1)
    for t in range(p):
        e = p ** (j - 1) * t
        for k in range(e + 1):
            out[k] += math.comb(e, k)
    return PowerSeries(p, out)


def phi_truncated(p: int, j: int, cap: int, absprec: Optional[int] = None) -> PowerSeries:
    """Phi_j(1+X) mod X^cap, optionally with coefficients reduced mod p^absprec."""
    require_prime(p)
    if j < 1:
        raise ValueError("j must be >= 1")
    mod = p ** absprec if absprec is not None else None
    out = []
    for k in range(cap):
        s = 0
        for t in range(p):
            e = p ** (j - 1) * t
            if k <= e:
                s += math.comb(e, k)
        out.append(PadicScalar(p, s % mod if mod else s, absprec))
    return PowerSeries(p, out, cap)


def omega(p: int, n: int) -> PowerSeries:
    """omega_n(X) = (1+X)^(p^n) - 1, monic of degree p^n."""
    require_prime(p)
    if n < 0:
        raise ValueError("n must be >= 0")
    q = p ** n
    return PowerSeries(p, [math.comb(q, k) if k else 0 for k in range(q + 1)])


def omega_congruent(p: int, ap: int, n: int, i: int) -> PowerSeries:
    """Product of phi(p, j) over 1 <= j <= n with j = i mod two_tilde."""
    from .trace import period_constants  # local import keeps module layering flat

    consts = period_constants(p, ap)
    out = PowerSeries.one(p)
    for j in range(1, n + 1):
        if (j - i) % consts.two_tilde == 0:
            out = out.mul(phi(p, j))
    return out


# -- spec-level operations -----------------------------------------------------


def series_arith(op: str, f: PowerSeries, g, cap: Optional[int]) -> PowerSeries:
    if op == "add":
        out = f + g
    elif op == "sub":
        out = f - g
    elif op == "mul":
        return f.mul(g, cap)
    elif op == "scalar_mul":
        out = f.scale(g)
    else:
        raise ValueError(f"unknown op {op!r}")
    return out.truncate(cap) if cap is not None else out


def _require_monic_exact(g: PowerSeries):
    d = g.degree()
    if d < 0:
        raise ValueError("modulus must be nonzero")
    if not g.is_exact():
        raise ValueError("modulus must be exact")
    if g.coeffs[d].value != 1:
        raise ValueError("modulus must be monic")
    return d


def divmod_monic(f: PowerSeries, g: PowerSeries):
    """Quotient and remainder of f against a monic exact polynomial g.

    f is taken as the polynomial spanned by its tracked coefficients;
    coefficient precision propagates through the subtractions.
    """
    d = _require_monic_exact(g)
    rem = list(f.coeffs)
    p = f.p
    if len(rem) <= d:
        return PowerSeries.zero(p), PowerSeries(p, rem)
    quot = [PadicScalar.zero(p) for _ in range(len(rem) - d)]
    for k in range(len(rem) - 1, d - 1, -1):
        c = rem[k]
        quot[k - d] = c
        if c.is_exact_zero():
            continue
        for t in range(d + 1):
            rem[k - d + t] = rem[k - d + t] - c * g.coeffs[t]
    return PowerSeries(p, quot), PowerSeries(p, rem[:d])


def reduce_mod(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Canonical remainder of f modulo the monic exact polynomial g."""
    return divmod_monic(f, g)[1]


def eval_at_root(f: PowerSeries, j: int) -> PowerSeries:
    """f reduced mod Phi_j(1+X): the value f(zeta_{p^j} - 1) in Z_p[zeta_{p^j}]."""
    modulus = phi(f.p, j)
    if f.cap is not None and f.cap < modulus.degree():
        raise ValueError(f"cap {f.cap} is below deg Phi_{j} = {modulus.degree()}")
    return reduce_mod(f, modulus)


def exact_divide(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Quotient f/g when g divides f exactly (remainder zero at the tracked precision)."""
    quot, rem = divmod_monic(f, g)
    for k, c in enumerate(rem.coeffs):
        if not c.is_zero():
            raise InexactDivision(
                f"remainder coefficient of X^{k} is {c!r}, not zero"
            )
    return quot


def gauss_norm_log(f: PowerSeries, s) -> Optional[Fraction]:
    """log_p of the Gauss norm |f|_r at r = p^(-s): max_k(-v_p(a_k) - k*s).

    Zero-at-precision coefficients contribute their precision bound (an upper
    estimate of the true norm).  Returns None for a series with no nonzero
    tracked coefficient.
    """
    s = Fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    best = None
    for k, c in enumerate(f.coeffs):
        if c.is_exact_zero():
            continue
        v = c.absprec if c.is_zero() else c.valuation()
        cand = -Fraction(v) - k * s
        if best is None or cand > best:
            best = cand
    return best


def log_series(p: int, cap: int) -> PowerSeries:
    """log_p(1+X) truncated: sum_{k=1}^{cap-1} (-1)^(k+1) X^k / k."""
    require_prime(p)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    coeffs = [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, cap)]
    return PowerSeries(p, coeffs, cap)


class LambdaElement:
    """An element of the level-n quotient Z_p[X]/(omega_n), canonically reduced."""

    __slots__ = ("p", "level", "poly")

    def __init__(self, p: int, level: int, poly: PowerSeries, reduced: bool = False):
        if level < 0:
            raise ValueError("level must be >= 0")
        if not reduced:
            poly = reduce_mod(poly, omega(p, level))
        self.p = p
        self.level = level
        self.poly = poly

    @classmethod
    def from_ints(cls, p: int, level: int, ints: Sequence) -> "LambdaElement":
        return cls(p, level, PowerSeries(p, ints))

    def __add__(self, other):
        self._check(other)
        return LambdaElement(self.p, self.level, self.poly + other.poly, reduced=True)

    def __sub__(self, other):
        self._check(other)
        return LambdaElement(self.p, self.level, self.poly - other.poly, reduced=True)

    def __neg__(self):
        return LambdaElement(self.p, self.level, -self.poly, reduced=True)

    def __mul__(self, other):
        if isinstance(other, LambdaElement):
            self._check(other)
            return LambdaElement(self.p, self.level, self.poly.mul(other.poly))
        return LambdaElement(self.p, self.level, self.poly * other)

    __rmul__ = __mul__

    def _check(self, other):
        if (self.p, self.level) != (other.p, other.level):
            raise ValueError("mixed (p, level)")

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other):
        if isinstance(other, LambdaElement):
            self._check(other)
            return self.poly == other.poly
        return self.poly == other

    __hash__ = None

    def __repr__(self):
        return f"LambdaElement(p={self.p}, level={self.level}, {self.poly!r})"

    def to_json(self) -> dict:
        out = self.poly.to_json()
        out["level"] = self.level
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LambdaElement":
        return cls(int(data["p"]), int(data["level"]), PowerSeries.from_json(data))
