"""Matrix ladders of cyclotomic factors, their scaled limits, and half-logarithms.

The finite-level object at index 1 is the 2x2 product
[[a_p, -Phi_n(1+X)], [1, 0]] ... [[a_p, -Phi_1(1+X)], [1, 0]]; other indices
are reached by the unimodular shift [[a_p(i), -1], [1, 0]] and its inverse,
so every finite-level entry is an exact integer polynomial.

The infinity-level object scales row i-N of the level-n ladder by
p^[(i-N)/2] (N = n+1 for odd p, n+2 for p = 2) and iterates n until two
consecutive approximants agree coefficientwise modulo p^prec.  Half-
logarithms combine the index-0 limit rows with the conjugate root
(row_0 - conj(alpha) * row_{-1}) and carry Z[alpha]-coordinate coefficients.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import IdentityViolation, NotConverged
from .padics import PadicScalar, QuadExtScalar
from .report import CheckReport
from .series import PowerSeries, phi, phi_truncated, reduce_mod
from .trace import ap_parity_value, beta, period_constants

Rows = List[List[PowerSeries]]  # [[theta_top, upsilon_top], [theta_bot, upsilon_bot]]

ENV_MAX_LIMIT_STEPS = "SPRUNG_MAX_LIMIT_STEPS"


def n_shift(p: int, n: int) -> int:
    """The level-to-conductor shift N: n+1 for odd p, n+2 for p = 2."""
    return n + 1 if p != 2 else n + 2


def _base_rows(p: int, ap: int, n: int, cap: Optional[int], absprec: Optional[int]) -> Rows:
    one = PowerSeries.one(p)
    zero = PowerSeries.zero(p)
    rows: Rows = [[one, zero], [zero, one]]
    for k in range(1, n + 1):
        if cap is None:
            phik = phi(p, k)
        else:
            phik = phi_truncated(p, k, cap, absprec)
        top, bot = rows
        new_top = [
            (top[0] * ap - phik.mul(bot[0], cap)).truncate(cap) if cap is not None
            else top[0] * ap - phik.mul(bot[0]),
            (top[1] * ap - phik.mul(bot[1], cap)).truncate(cap) if cap is not None
            else top[1] * ap - phik.mul(bot[1]),
        ]
        rows = [new_top, top]
    return rows


def _shift_up(rows: Rows, a: int) -> Rows:
    # [[a, -1], [1, 0]] acting on (top; bottom)
    top, bot = rows
    return [[top[0] * a - bot[0], top[1] * a - bot[1]], top]


def _shift_down(rows: Rows, a: int) -> Rows:
    # inverse [[0, 1], [-1, a]] acting on (top; bottom)
    top, bot = rows
    return [bot, [bot[0] * a - top[0], bot[1] * a - top[1]]]


def _rows_at_index(p: int, ap: int, rows1: Rows, i: int, parity_flip: bool = False) -> Rows:
    """Shift the index-1 rows to index i; parity_flip corrupts a_p(.) for fault injection."""
    off = 1 if parity_flip else 0
    rows = rows1
    idx = 1
    while idx < i:
        rows = _shift_up(rows, ap_parity_value(p, ap, idx + off))
        idx += 1
    while idx > i:
        rows = _shift_down(rows, ap_parity_value(p, ap, idx - 1 + off))
        idx -= 1
    return rows


@dataclass
class LadderMatrix:
    """2x2 block (rows i and i-1) of the theta/upsilon ladder.

    ``level`` is an integer for finite levels or the string "infinity" for the
    scaled limit; ``prec`` is only meaningful at infinity.
    """

    p: int
    ap: int
    level: Union[int, str]
    index: int
    entries: Rows
    cap: Optional[int] = None
    prec: Optional[int] = None
    n_used: Optional[int] = None

    @property
    def theta_top(self) -> PowerSeries:
        return self.entries[0][0]

    @property
    def upsilon_top(self) -> PowerSeries:
        return self.entries[0][1]

    @property
    def theta_bot(self) -> PowerSeries:
        return self.entries[1][0]

    @property
    def upsilon_bot(self) -> PowerSeries:
        return self.entries[1][1]

    def det(self, cap: Optional[int] = None) -> PowerSeries:
        """theta_i * upsilon_{i-1} - upsilon_i * theta_{i-1}."""
        return self.theta_top.mul(self.upsilon_bot, cap) - self.upsilon_top.mul(
            self.theta_bot, cap
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "ap": self.ap,
            "level": self.level,
            "index": self.index,
            "cap": self.cap,
            "prec": self.prec,
            "entries": [[s.to_json() for s in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LadderMatrix":
        return cls(
            p=int(data["p"]),
            ap=int(data["ap"]),
            level=data["level"],
            index=int(data["index"]),
            entries=[[PowerSeries.from_json(s) for s in row] for row in data["entries"]],
            cap=data.get("cap"),
            prec=data.get("prec"),
        )


def ladder(p: int, ap: int, n: int, i: int, cap: Optional[int] = None) -> LadderMatrix:
    """Finite-level ladder at level n and index i, exact integer polynomials.

    Entries are truncated at X^cap only when cap is given and below the full
    degree; otherwise they are complete polynomials.
    """
    period_constants(p, ap)
    if n < 1:
        raise ValueError("level n must be >= 1")
    if cap is not None and cap >= p ** n + 1:
        cap = None  # full polynomials fit, no truncation needed
    rows1 = _base_rows(p, ap, n, cap, None)
    rows = _rows_at_index(p, ap, rows1, i)
    return LadderMatrix(p, ap, n, i, rows, cap)


def _max_limit_steps(p: int, cap: int, prec: int) -> int:
    env = os.environ.get(ENV_MAX_LIMIT_STEPS)
    if env is not None:
        return int(env)
    return math.ceil(math.log(max(cap, 2), p)) + 2 * prec + 8


# The limit iteration runs on plain integer coefficient lists modulo p^work;
# every step (cyclotomic factor, unimodular shift) is Z-linear, so reducing
# modulo a fixed p-power is sound, and Fraction overhead is paid only once
# at the final scaling.

IntRows = List[List[List[int]]]


def _mul_trunc_int(a: List[int], b: List[int], cap: int, mod: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * min(cap, len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        lim = min(cap - i, len(b))
        for j in range(lim):
            out[i + j] += ai * b[j]
    return [x % mod for x in out]


def _row_combo_int(x: List[int], y: List[int], a: int, mod: int) -> List[int]:
    # a*x - y, padded to the longer length
    n = max(len(x), len(y))
    out = []
    for k in range(n):
        xv = x[k] if k < len(x) else 0
        yv = y[k] if k < len(y) else 0
        out.append((a * xv - yv) % mod)
    return out


def _phi_ints(p: int, j: int, cap: int, mod: int) -> List[int]:
    out = []
    for k in range(cap):
        s = 0
        for t in range(p):
            e = p ** (j - 1) * t
            if k <= e:
                s += math.comb(e, k)
        out.append(s % mod)
    return out


def _append_factor_int(p: int, ap: int, rows: IntRows, k: int, cap: int, mod: int) -> IntRows:
    phik = _phi_ints(p, k, cap, mod)
    top, bot = rows
    new_top = []
    for c in range(2):
        conv = _mul_trunc_int(phik, bot[c], cap, mod)
        new_top.append(_row_combo_int(top[c], conv, ap, mod))
    return [new_top, top]


def _rows_at_index_int(
    p: int, ap: int, rows1: IntRows, i: int, mod: int, parity_flip: bool
) -> IntRows:
    off = 1 if parity_flip else 0
    rows = rows1
    idx = 1
    while idx < i:
        a = ap_parity_value(p, ap, idx + off)
        top, bot = rows
        rows = [[_row_combo_int(top[c], bot[c], a, mod) for c in range(2)], top]
        idx += 1
    while idx > i:
        a = ap_parity_value(p, ap, idx - 1 + off)
        top, bot = rows
        rows = [bot, [_row_combo_int(bot[c], top[c], a, mod) for c in range(2)]]
        idx -= 1
    return rows


def ladder_infinity(
    p: int,
    ap: int,
    i: int,
    cap: int,
    prec: int,
    _corrupt_parity: bool = False,
) -> LadderMatrix:
    """Scaled limit rows (i, i-1) mod X^cap, stabilized modulo p^prec.

    Iterates the level n upward from the least n with p^n >= cap until two
    consecutive scaled approximants agree coefficientwise modulo p^prec twice
    in a row (a single agreement can be a parity stall when a_p = 0).  Raises
    NotConverged past the step cap, which the SPRUNG_MAX_LIMIT_STEPS
    environment variable overrides.
    """
    period_constants(p, ap)
    if cap < 1 or prec < 1:
        raise ValueError("cap and prec must be >= 1")
    n_start = max(1, math.ceil(math.log(max(cap, 2), p)))
    while p ** n_start < cap:
        n_start += 1
    max_steps = _max_limit_steps(p, cap, prec)
    n_stop = n_start + max_steps
    # Working precision covers the worst p-power division in the row scaling.
    work = prec + (n_stop + 3 + abs(i)) // 2 + 4
    mod = p ** work

    rows1: IntRows = [[[1], []], [[], [1]]]
    for k in range(1, n_start):
        rows1 = _append_factor_int(p, ap, rows1, k, cap, mod)

    prev = None  # (ints rows, e_top, e_bot)
    agreements = 0
    n = n_start - 1
    while n < n_stop:
        n += 1
        rows1 = _append_factor_int(p, ap, rows1, n, cap, mod)
        N = n_shift(p, n)
        shifted = _rows_at_index_int(p, ap, rows1, i - N, mod, _corrupt_parity)
        e_top = -((i - N) // 2)
        e_bot = -((i - 1 - N) // 2)
        approx = (shifted, e_top, e_bot)
        if prev is not None and _int_approx_congruent(p, prev, approx, prec):
            agreements += 1
            if agreements >= 2:
                entries = [
                    [_ints_to_series(p, shifted[0][c], e_top, cap, prec) for c in range(2)],
                    [_ints_to_series(p, shifted[1][c], e_bot, cap, prec) for c in range(2)],
                ]
                return LadderMatrix(
                    p, ap, "infinity", i, entries, cap=cap, prec=prec, n_used=n
                )
        else:
            agreements = 0
        prev = approx
    raise NotConverged(
        f"no stabilization mod {p}^{prec} within {max_steps} steps "
        f"(p={p}, a_p={ap}, i={i}, cap={cap})"
    )


def _int_approx_congruent(p: int, a, b, prec: int) -> bool:
    rows_a, ea_top, ea_bot = a
    rows_b, eb_top, eb_bot = b
    for r, (ea, eb) in enumerate(((ea_top, eb_top), (ea_bot, eb_bot))):
        # x/p^ea = y/p^eb mod p^prec  <=>  x*p^eb - y*p^ea = 0 mod p^(prec+ea+eb)
        modulus = p ** (prec + ea + eb)
        sa = p ** eb
        sb = p ** ea
        for c in range(2):
            x, y = rows_a[r][c], rows_b[r][c]
            n = max(len(x), len(y))
            for k in range(n):
                xv = x[k] if k < len(x) else 0
                yv = y[k] if k < len(y) else 0
                if (xv * sa - yv * sb) % modulus:
                    return False
    return True


def _ints_to_series(p: int, ints: List[int], e: int, cap: int, prec: int) -> PowerSeries:
    coeffs = [PadicScalar(p, Fraction(x, p ** e), prec).reduce() for x in ints]
    return PowerSeries(p, coeffs, cap)


def _floor_absprec(s: PowerSeries, prec: int) -> PowerSeries:
    out = []
    for c in s.coeffs:
        assert c.absprec is None or c.absprec >= prec
        out.append(PadicScalar(s.p, c.value, prec).reduce())
    return PowerSeries(s.p, out, s.cap)


class QuadExtSeries:
    """A power series with Z[alpha]-coordinate coefficients, stored as (a, b) parts."""

    __slots__ = ("p", "ap", "a", "b")

    def __init__(self, p: int, ap: int, a: PowerSeries, b: PowerSeries):
        self.p = p
        self.ap = ap
        self.a = a
        self.b = b

    @classmethod
    def from_plain(cls, p: int, ap: int, f: PowerSeries) -> "QuadExtSeries":
        return cls(p, ap, f, PowerSeries.zero(p, f.cap))

    @property
    def cap(self) -> Optional[int]:
        return self.a._cap_min(self.b)

    def __add__(self, other: "QuadExtSeries") -> "QuadExtSeries":
        return QuadExtSeries(self.p, self.ap, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QuadExtSeries") -> "QuadExtSeries":
        return QuadExtSeries(self.p, self.ap, self.a - other.a, self.b - other.b)

    def scale(self, s: QuadExtScalar) -> "QuadExtSeries":
        # (a + b*A)(sa + sb*A) with A^2 = ap*A - p
        a = self.a.scale(s.a) - self.b.scale(s.b * self.p)
        b = self.a.scale(s.b) + self.b.scale(s.a) + self.b.scale(s.b * self.ap)
        return QuadExtSeries(self.p, self.ap, a, b)

    def mul_series(self, f: PowerSeries, cap: Optional[int] = None) -> "QuadExtSeries":
        return QuadExtSeries(self.p, self.ap, self.a.mul(f, cap), self.b.mul(f, cap))

    def congruent(self, other: "QuadExtSeries", k: int, upto: Optional[int] = None) -> bool:
        return self.a.congruent(other.a, k, upto) and self.b.congruent(other.b, k, upto)

    def __eq__(self, other):
        if not isinstance(other, QuadExtSeries):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    __hash__ = None

    def reduce_mod(self, modulus: PowerSeries) -> "QuadExtSeries":
        return QuadExtSeries(
            self.p, self.ap, reduce_mod(self.a, modulus), reduce_mod(self.b, modulus)
        )

    def coefficient_valuation(self, k: int):
        """min(v(a_k), v(b_k) + 1/2): the ramified valuation of coefficient k."""
        vals = []
        ca = self.a.coefficient_raw(k)
        cb = self.b.coefficient_raw(k)
        if not ca.is_exact_zero():
            vals.append(Fraction(ca.absprec if ca.is_zero() else ca.valuation()))
        if not cb.is_exact_zero():
            vals.append(Fraction(cb.absprec if cb.is_zero() else cb.valuation()) + Fraction(1, 2))
        return min(vals) if vals else None

    def gauss_norm_log(self, s) -> Optional[Fraction]:
        s = Fraction(s)
        best = None
        n = len(self.a.coeffs) if len(self.a.coeffs) > len(self.b.coeffs) else len(self.b.coeffs)
        for k in range(n):
            v = self.coefficient_valuation(k)
            if v is None:
                continue
            cand = -v - k * s
            if best is None or cand > best:
                best = cand
        return best

    def to_json(self) -> dict:
        n = max(len(self.a.coeffs), len(self.b.coeffs))
        return {
            "p": self.p,
            "ap": self.ap,
            "cap": self.cap,
            "coeffs": [
                {
                    "a": self.a.coefficient_raw(k).to_json(),
                    "b": self.b.coefficient_raw(k).to_json(),
                }
                for k in range(n)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuadExtSeries":
        p = int(data["p"])
        ap = int(data["ap"])
        cap = data.get("cap")
        cap = None if cap in (None, "inf") else int(cap)
        a = [PadicScalar.from_json(p, c["a"]) for c in data.get("coeffs", [])]
        b = [PadicScalar.from_json(p, c["b"]) for c in data.get("coeffs", [])]
        return cls(p, ap, PowerSeries(p, a, cap), PowerSeries(p, b, cap))


def combine_with_conjugate_root(
    p: int, ap: int, f0: PowerSeries, f1: PowerSeries
) -> QuadExtSeries:
    """f0 - conj(alpha) * f1 as a QuadExtSeries (conj(alpha) = a_p - alpha)."""
    return QuadExtSeries(p, ap, f0 - f1 * ap, f1)


@dataclass
class HalfLogPair:
    """The pair (row_0 - conj(alpha) row_{-1}) built from theta and upsilon limits."""

    p: int
    ap: int
    root_tag: str
    log_theta: QuadExtSeries
    log_upsilon: QuadExtSeries
    cap: int
    prec: int

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "ap": self.ap,
            "root_tag": self.root_tag,
            "cap": self.cap,
            "prec": self.prec,
            "log_theta": self.log_theta.to_json(),
            "log_upsilon": self.log_upsilon.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "HalfLogPair":
        return cls(
            p=int(data["p"]),
            ap=int(data["ap"]),
            root_tag=data.get("root_tag", "alpha"),
            log_theta=QuadExtSeries.from_json(data["log_theta"]),
            log_upsilon=QuadExtSeries.from_json(data["log_upsilon"]),
            cap=int(data["cap"]),
            prec=int(data["prec"]),
        )


def _intrinsic_variant(
    p: int, ap: int, inf_rows: LadderMatrix, i: int, j: int
) -> Tuple[QuadExtSeries, QuadExtSeries]:
    """(row_{-i} abar^i - row_{-j} abar^j) / (beta_{j-1} - beta_{i-1}) for j = i+1.

    ``inf_rows`` must be the infinity matrix at index -i (rows -i and -i-1).
    """
    assert j == i + 1 and inf_rows.index == -i
    abar = QuadExtScalar.alpha_bar(p, ap)
    denom = beta(p, ap, j - 1) - beta(p, ap, i - 1)
    inv = denom.inverse()
    out = []
    for col in range(2):
        top = QuadExtSeries.from_plain(p, ap, inf_rows.entries[0][col]).scale(
            abar.pow_int(i)
        )
        bot = QuadExtSeries.from_plain(p, ap, inf_rows.entries[1][col]).scale(
            abar.pow_int(j)
        )
        out.append((top - bot).scale(inv))
    return out[0], out[1]


def half_logs(p: int, ap: int, cap: int, prec: int) -> HalfLogPair:
    """Half-logarithm pair from the index-0 limit rows, intrinsicness-checked.

    The same series are recomputed from the index pairs (0, 1) and
    (two_tilde - 1, two_tilde); disagreement beyond p^prec raises
    IdentityViolation.
    """
    consts = period_constants(p, ap)
    tt = consts.two_tilde
    work = prec + 2
    m0 = ladder_infinity(p, ap, 0, cap, work)
    log_theta = combine_with_conjugate_root(p, ap, m0.theta_top, m0.theta_bot)
    log_upsilon = combine_with_conjugate_root(p, ap, m0.upsilon_top, m0.upsilon_bot)

    # (i, j) = (0, 1) reuses the same rows; (tt-1, tt) needs rows at index 1-tt.
    v_theta, v_upsilon = _intrinsic_variant(p, ap, m0, 0, 1)
    checks = [(v_theta, v_upsilon)]
    m_shift = ladder_infinity(p, ap, 1 - tt, cap, work)
    checks.append(_intrinsic_variant(p, ap, m_shift, tt - 1, tt))
    for v_theta, v_upsilon in checks:
        if not v_theta.congruent(log_theta, prec) or not v_upsilon.congruent(
            log_upsilon, prec
        ):
            raise IdentityViolation(
                f"intrinsicness cross-check failed for (p, a_p) = ({p}, {ap}) "
                f"at precision {prec}"
            )
    return HalfLogPair(p, ap, "alpha", log_theta, log_upsilon, cap, prec)


def pollack_product(
    p: int, parity: str, cap: int, prec: int = 24
) -> PowerSeries:
    """prod over j = parity of Phi_j(1+X)/p, truncated at X^cap.

    Factors are included until the partial product stabilizes modulo p^prec;
    only odd p is meaningful (the construction needs p - 1 > 1 parity classes).
    """
    if p == 2:
        raise ValueError("parity products need an odd prime")
    period_constants(p, 0)
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    work = prec + 8
    j = 2 if parity == "even" else 1
    out = PowerSeries(p, [PadicScalar(p, 1, work)], cap)
    prev = None
    agreements = 0
    max_steps = math.ceil(math.log(max(cap, 2), p)) + prec + 10
    for _ in range(max_steps):
        factor = phi_truncated(p, j, cap, work).scale(Fraction(1, p))
        out = out.mul(factor, cap).reduce_coeffs()
        if prev is not None and out.congruent(prev, prec):
            agreements += 1
            if agreements >= 2:
                return _floor_absprec(out, prec)
        else:
            agreements = 0
        prev = out
        j += 2
    raise NotConverged(
        f"parity product did not stabilize mod {p}^{prec} within {max_steps} factors"
    )


def kappa_identity_check(p: int, ap: int, n: int, i: int) -> CheckReport:
    """Exact finite-level check of the scaled-row recombination identity.

    With N the level shift and kappa_m = alpha^m (beta_m - beta_{i-1}),
    asserts kappa_{-N} row_0 - kappa_{-N-1} row_{-1}
    = p^[(-N-i)/2] row_{-N-i} * conj(alpha)^i, entrywise for theta and
    upsilon, in exact Z[alpha] polynomial arithmetic.
    """
    period_constants(p, ap)
    if n < 1:
        raise ValueError("level n must be >= 1")
    N = n_shift(p, n)
    alpha = QuadExtScalar.alpha(p, ap)
    abar = QuadExtScalar.alpha_bar(p, ap)
    beta_ref = beta(p, ap, i - 1)
    kappas = {}
    for m in (-N, -N - 1):
        kappas[m] = alpha.pow_int(m) * (beta(p, ap, m) - beta_ref)

    m0 = ladder(p, ap, n, 0)
    m_shift = ladder(p, ap, n, -N - i)
    scale = PadicScalar.exact(p, Fraction(p) ** ((-N - i) // 2))
    abar_i = abar.pow_int(i)
    for col, label in ((0, "theta"), (1, "upsilon")):
        lhs = QuadExtSeries.from_plain(p, ap, m0.entries[0][col]).scale(
            kappas[-N]
        ) - QuadExtSeries.from_plain(p, ap, m0.entries[1][col]).scale(kappas[-N - 1])
        rhs = QuadExtSeries.from_plain(
            p, ap, m_shift.entries[0][col].scale(scale)
        ).scale(abar_i)
        if lhs != rhs:
            raise IdentityViolation(
                f"kappa identity failed for {label} at "
                f"(p, a_p, n, i) = ({p}, {ap}, {n}, {i})"
            )
    return CheckReport(
        name="kappa_identity", config={"p": p, "ap": ap, "n": n, "i": i}
    )
