"""Level-n linear algebra of the ladder map and its constructive inversion.

phi_n^i sends a pair (a, b) to (theta_i a + upsilon_i b,
theta_{i-1} a + upsilon_{i-1} b) in the quotient by omega_n.  Its kernel is
spanned by X * (upsilon_row, -theta_row) for two adjacent rows, and the map
is inverted by peeling one cyclotomic factor per level through exact
polynomial division; a division failure is a sound and complete witness that
the input is outside the image.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from .errors import IdentityViolation
from .ladders import ladder
from .padics import PadicScalar
from .report import CheckReport
from .series import (
    LambdaElement,
    PowerSeries,
    exact_divide,
    omega,
    phi,
    reduce_mod,
)
from .trace import ap_parity_value, period_constants


@dataclass(frozen=True)
class LambdaPair:
    """Two level-n quotient elements with shared (p, level)."""

    first: LambdaElement
    second: LambdaElement

    def __post_init__(self):
        if (self.first.p, self.first.level) != (self.second.p, self.second.level):
            raise ValueError("components live at different (p, level)")

    @property
    def p(self) -> int:
        return self.first.p

    @property
    def level(self) -> int:
        return self.first.level

    @classmethod
    def from_ints(cls, p: int, level: int, first, second) -> "LambdaPair":
        return cls(
            LambdaElement.from_ints(p, level, first),
            LambdaElement.from_ints(p, level, second),
        )

    def __sub__(self, other: "LambdaPair") -> "LambdaPair":
        return LambdaPair(self.first - other.first, self.second - other.second)

    def is_zero(self) -> bool:
        return self.first.is_zero() and self.second.is_zero()

    def __eq__(self, other):
        if not isinstance(other, LambdaPair):
            return NotImplemented
        return self.first == other.first and self.second == other.second

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "level": self.level,
            "first": self.first.to_json(),
            "second": self.second.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "LambdaPair":
        p = int(data["p"])
        level = int(data["level"])
        first = dict(data["first"], p=p, level=level)
        second = dict(data["second"], p=p, level=level)
        return cls(LambdaElement.from_json(first), LambdaElement.from_json(second))


@dataclass(frozen=True)
class KernelBasis:
    generators: Tuple[LambdaPair, LambdaPair]


@lru_cache(maxsize=256)
def _rows_mod_omega(p: int, ap: int, n: int, i: int):
    """Ladder rows (i, i-1) at level n, canonically reduced mod omega_n."""
    m = ladder(p, ap, n, i)
    w = omega(p, n)
    return tuple(tuple(reduce_mod(s, w) for s in row) for row in m.entries)


def phi_apply(p: int, ap: int, n: int, i: int, v: LambdaPair) -> LambdaPair:
    """(theta_i a + upsilon_i b, theta_{i-1} a + upsilon_{i-1} b) mod omega_n."""
    period_constants(p, ap)
    rows = _rows_mod_omega(p, ap, n, i)
    a, b = v.first.poly, v.second.poly
    out = []
    for row in rows:
        out.append(LambdaElement(p, n, row[0].mul(a) + row[1].mul(b)))
    return LambdaPair(out[0], out[1])


def kernel_basis(p: int, ap: int, n: int, i: int = 1) -> KernelBasis:
    """Generators X*(upsilon_i, -theta_i) and X*(upsilon_{i-1}, -theta_{i-1})."""
    period_constants(p, ap)
    rows = _rows_mod_omega(p, ap, n, i)
    x = PowerSeries.x_power(p, 1)
    gens = []
    for row in rows:
        gens.append(
            LambdaPair(
                LambdaElement(p, n, x.mul(row[1])),
                LambdaElement(p, n, -x.mul(row[0])),
            )
        )
    return KernelBasis((gens[0], gens[1]))


def kernel_member(p: int, ap: int, n: int, v: LambdaPair) -> bool:
    """Membership in ker(phi_n): the index-1 map sends v to (0, 0) exactly."""
    return phi_apply(p, ap, n, 1, v).is_zero()


def decompose(p: int, ap: int, n: int, P1: LambdaElement, P0: LambdaElement) -> LambdaPair:
    """Invert the index-1 map: find (theta, upsilon) with phi(theta, upsilon) = (P1, P0).

    Peels the cyclotomic factors from the outside in: at step j the pair
    (u, v) becomes (v, (a_p v - u)/Phi_j), dividing canonical lifts exactly.
    InexactDivision from any step witnesses that the input is not in the
    image.  The result is one representative of the kernel coset.
    """
    period_constants(p, ap)
    if n < 1:
        raise ValueError("level n must be >= 1")
    if (P1.p, P1.level) != (p, n) or (P0.p, P0.level) != (p, n):
        raise ValueError("inputs must live at the requested (p, level)")
    u, v = P1.poly, P0.poly
    for j in range(n, 0, -1):
        w = v * ap - u
        u, v = v, exact_divide(w, phi(p, j))
    out = LambdaPair(LambdaElement(p, n, u), LambdaElement(p, n, v))
    back = phi_apply(p, ap, n, 1, out)
    if not (back.first == P1 and back.second == P0):
        raise IdentityViolation(
            f"peeling reconstruction failed at (p, a_p, n) = ({p}, {ap}, {n})"
        )
    return out


KERNEL_COSET_NOTE = (
    "theta/upsilon are determined only modulo the kernel spanned by "
    "X*(upsilon_row, -theta_row) over adjacent rows; this is the canonical "
    "peeling representative."
)


def limit_lemma_check(p: int, ap: int, m: int, nu: int) -> CheckReport:
    """Kernel generators at level 2m+nu, reduced mod omega_nu, are divisible by p^m.

    The ladder at level 2m+nu is computed modulo omega_nu from the start
    (reduction is a ring map, so the generators come out identical), keeping
    the degrees at p^nu instead of p^(2m+nu).
    """
    period_constants(p, ap)
    if m < 1 or nu < 0:
        raise ValueError("need m >= 1 and nu >= 0")
    level = 2 * m + nu
    w = omega(p, nu)
    one = PowerSeries.one(p)
    zero = PowerSeries.zero(p)
    rows = [[one, zero], [zero, one]]
    for k in range(1, level + 1):
        # (1+X)^(p^nu) = 1 mod omega_nu, so Phi_k = p mod omega_nu once k > nu
        phik = reduce_mod(phi(p, k), w) if k <= nu else PowerSeries(p, [p])
        top, bot = rows
        rows = [
            [
                reduce_mod(top[0] * ap - phik.mul(bot[0]), w),
                reduce_mod(top[1] * ap - phik.mul(bot[1]), w),
            ],
            top,
        ]
    # shift from index 1 up to index 2m+1 (the generator rows 2m+1 and 2m)
    idx = 1
    while idx < 2 * m + 1:
        top, bot = rows
        a = ap_parity_value(p, ap, idx)
        rows = [[top[0] * a - bot[0], top[1] * a - bot[1]], top]
        idx += 1
    x = PowerSeries.x_power(p, 1)
    for row in rows:
        for s in (reduce_mod(x.mul(row[1]), w), reduce_mod(-x.mul(row[0]), w)):
            for k, c in enumerate(s.coeffs):
                if c.is_zero():
                    continue
                if c.valuation() < m:
                    raise IdentityViolation(
                        f"coefficient of X^{k} has valuation {c.valuation()} < {m} "
                        f"at (p, a_p, m, nu) = ({p}, {ap}, {m}, {nu})"
                    )
    return CheckReport(
        name="limit_lemma", config={"p": p, "ap": ap, "m": m, "nu": nu}
    )


def projection_compatibility_check(
    p: int, ap: int, n: int, i: int, v: LambdaPair
) -> CheckReport:
    """Level n+1 -> n compatibility under the diagonal 1/p scalings.

    diag(1/p, 1) for odd i (diag(1, 1/p) for even i) applied to the reduced
    level-(n+1) image equals the level-n image at index i+1, exactly.
    """
    period_constants(p, ap)
    if v.level != n + 1:
        raise ValueError("input pair must live at level n+1")
    w = omega(p, n)
    up = phi_apply(p, ap, n + 1, i, v)
    first = reduce_mod(up.first.poly, w)
    second = reduce_mod(up.second.poly, w)
    inv_p = PadicScalar.exact(p, Fraction(1, p))
    if i % 2 != 0:
        first = first.scale(inv_p)
    else:
        second = second.scale(inv_p)
    v_down = LambdaPair(
        LambdaElement(p, n, reduce_mod(v.first.poly, w)),
        LambdaElement(p, n, reduce_mod(v.second.poly, w)),
    )
    down = phi_apply(p, ap, n, i + 1, v_down)
    if not (down.first.poly == first and down.second.poly == second):
        raise IdentityViolation(
            f"projection compatibility failed at (p, a_p, n, i) = ({p}, {ap}, {n}, {i})"
        )
    return CheckReport(
        name="projection_compatibility",
        config={"p": p, "ap": ap, "n": n, "i": i},
    )
