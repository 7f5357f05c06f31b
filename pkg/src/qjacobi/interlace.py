"""Interlacing predicates and one executable checker per claim.

Every checker returns an :class:`InterlacingVerdict`. ``hypothesis_met`` is
false when the parameters fall outside the claim's regime or a hypothesis
fails; ``boundary`` marks verdicts decided inside a numerical tie band (near
common zeros), which are excluded from the boolean outcome.

Comparisons are strict and never inflated by an epsilon.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .core import ParamPair, Regime, recurrence_coeffs, reflect
from .errors import InvalidParameter, LengthMismatch, UnsupportedShift
from .relations import k_constants
from .zeros import askey_delta, bound_chain, zeros, zeros_orthogonal

COPRIME_TOL = 1e-9
TIE_TOL = 1e-10


class ClaimId(enum.Enum):
    LEMMA15 = "lemma15"
    LEMMA15A = "lemma15a"
    LEMMA15B = "lemma15b"
    THM21 = "thm21"
    COR_NONINTERLACE = "cor_noninterlace"
    COR22 = "cor22"
    THM31 = "thm31"
    THM41 = "thm41"
    THM42 = "thm42"
    THM43 = "thm43"
    THM51I = "thm51i"
    THM51II = "thm51ii"
    THM61 = "thm61"
    EQ45 = "eq45"


@dataclass(frozen=True)
class Witness:
    """An offending point and the open interval it should (not) lie in.

    ``None`` endpoints stand for an unbounded side.
    """

    lo: float | None
    hi: float | None
    point: float | None
    reason: str

    def as_dict(self):
        return {"lo": self.lo, "hi": self.hi, "point": self.point, "reason": self.reason}


@dataclass
class InterlacingVerdict:
    claim_id: ClaimId
    holds: bool
    hypothesis_met: bool
    witnesses: list[Witness] = field(default_factory=list)
    notes: str = ""
    boundary: bool = False
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds and not self.hypothesis_met:
            raise AssertionError(f"{self.claim_id.value}: holds without hypothesis")
        if self.hypothesis_met and not self.holds and not self.witnesses:
            raise AssertionError(f"{self.claim_id.value}: failure without witnesses")

    @property
    def status(self) -> str:
        if self.boundary:
            return "boundary"
        if not self.hypothesis_met:
            return "vacuous"
        return "holds" if self.holds else "fails"


# --- predicates --------------------------------------------------------------


def _increasing(seq) -> bool:
    return all(u < v for u, v in zip(seq, seq[1:]))


def _require_sorted(*seqs):
    for s in seqs:
        if not _increasing(list(s)):
            raise InvalidParameter(f"sequence is not strictly increasing: {list(s)}")


def interlace_equal(a, b) -> bool:
    """Equal-count interlacing: strict alternation starting with either set."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        raise LengthMismatch(f"equal-degree interlacing needs equal counts, got {len(a)} and {len(b)}")
    _require_sorted(a, b)
    if not a:
        return True
    first, second = (a, b) if a[0] < b[0] else (b, a)
    merged = [v for pair in zip(first, second) for v in pair]
    return _increasing(merged)


def interlace_consecutive(big, small) -> bool:
    """``big_1 < small_1 < big_2 < ... < small_m < big_{m+1}`` with ``m = len(big) - 1``."""
    big, small = list(big), list(small)
    if len(small) != len(big) - 1:
        raise LengthMismatch(f"consecutive interlacing needs counts m+1 and m, got {len(big)} and {len(small)}")
    _require_sorted(big, small)
    merged = [v for pair in zip(big, small) for v in pair] + big[-1:]
    return _increasing(merged)


def interlace_stieltjes(big, small) -> bool:
    """Each entry of ``small`` sits alone in an open gap of ``big`` (``m <= n-2``)."""
    big, small = list(big), list(small)
    if len(small) > len(big) - 2:
        raise LengthMismatch(f"Stieltjes interlacing needs m <= n-2, got n={len(big)}, m={len(small)}")
    _require_sorted(big, small)
    used = set()
    for s in small:
        gap = next((i for i in range(len(big) - 1) if big[i] < s < big[i + 1]), None)
        if gap is None or gap in used:
            return False
        used.add(gap)
    return True


def min_separation(a, b) -> float:
    return min((abs(u - v) for u in a for v in b), default=math.inf)


def coprime(a, b, tol: float = COPRIME_TOL) -> bool:
    """Numerical co-primality: no zero of ``a`` within ``tol`` of a zero of ``b``."""
    return min_separation(a, b) > tol


# --- witness helpers ---------------------------------------------------------


def _chain_witnesses(items) -> list[Witness]:
    """``items`` is a list of ``(label, value)`` that must strictly increase."""
    out = []
    for i in range(len(items) - 1):
        (l0, v0), (l1, v1) = items[i], items[i + 1]
        if not v0 < v1:
            lo = items[i - 1][1] if i > 0 else None
            out.append(Witness(lo, v0, v1, f"{l0} < {l1} fails"))
    return out


def _labelled(name, values, deg):
    return [(f"{name}_{{{i + 1},{deg}}}", v) for i, v in enumerate(values)]


def _alternate(first, second):
    items = []
    for i in range(max(len(first), len(second))):
        if i < len(first):
            items.append(first[i])
        if i < len(second):
            items.append(second[i])
    return items


def _equal_witnesses(a_items, b_items) -> list[Witness]:
    first, second = (a_items, b_items) if a_items[0][1] < b_items[0][1] else (b_items, a_items)
    return _chain_witnesses(_alternate(first, second))


def _vacuous(claim, reason, **values):
    return InterlacingVerdict(claim, holds=False, hypothesis_met=False, notes=reason, values=values)


def _gate(claim, params, n, n_min, regime=Regime.QUASI_ORDER1):
    if params.regime is not regime:
        return _vacuous(claim, f"regime {params.regime.value} outside hypothesis ({regime.value})")
    if n < n_min:
        return _vacuous(claim, f"n={n} below the claim's floor n>={n_min}")
    return None


def _verdict(claim, witnesses, notes="", **values):
    return InterlacingVerdict(claim, holds=not witnesses, hypothesis_met=True,
                              witnesses=witnesses, notes=notes, values=values)


def _merge(claim, parts: list[InterlacingVerdict], **values) -> InterlacingVerdict:
    witnesses = [w for p in parts for w in p.witnesses]
    merged_values = {}
    for p in parts:
        merged_values.update(p.values)
    merged_values.update(values)
    if any(not p.hypothesis_met for p in parts):
        return _vacuous(claim, "; ".join(p.notes for p in parts if p.notes), **merged_values)
    return _verdict(claim, witnesses, "; ".join(p.notes for p in parts if p.notes), **merged_values)


# --- zeros around -1 --------------------------------------------------------


def check_lemma15a(n: int, params: ParamPair) -> InterlacingVerdict:
    """``x_1 < -1 < y_1 < x_2 < ... < x_n < y_n < 1`` with y the zeros of ``P_n^(a,b+1)``."""
    claim = ClaimId.LEMMA15A
    if (v := _gate(claim, params, n, 1)) is not None:
        return v
    x = zeros(n, params).zeros
    y = zeros_orthogonal(n, params.shifted(dbeta=1)).zeros
    items = [(f"x_{{1,{n}}}", x[0]), ("-1", -1.0)]
    items += _alternate(_labelled("y", y, n), _labelled("x", x, n)[1:]) + [("1", 1.0)]
    return _verdict(claim, _chain_witnesses(items), x1=x[0], x2=x[1] if n > 1 else None)


def check_lemma15b(n: int, params: ParamPair) -> InterlacingVerdict:
    """``x_{1,n+1} < -1 < y_{1,n} < x_{2,n+1} < ... < y_{n,n} < x_{n+1,n+1} < 1``."""
    claim = ClaimId.LEMMA15B
    if (v := _gate(claim, params, n, 1)) is not None:
        return v
    x = zeros(n + 1, params).zeros
    y = zeros_orthogonal(n, params.shifted(dbeta=1)).zeros
    items = [(f"x_{{1,{n + 1}}}", x[0]), ("-1", -1.0)]
    items += _alternate(_labelled("y", y, n), _labelled("x", x, n + 1)[1:]) + [("1", 1.0)]
    return _verdict(claim, _chain_witnesses(items))


def check_lemma15(n: int, params: ParamPair) -> InterlacingVerdict:
    return _merge(ClaimId.LEMMA15, [check_lemma15a(n, params), check_lemma15b(n, params)])


# --- consecutive degrees -----------------------------------------------------


def check_thm21(n: int, params: ParamPair) -> InterlacingVerdict:
    """Zeros of degrees n and n+1: the full ordering chain, interlacing of the
    interior zeros, and interlacing of ``(1+x)P_n`` with ``P_{n+1}``.

    Mirrored parameters are routed to :func:`check_cor22`.
    """
    if params.regime is Regime.QUASI_ORDER1_MIRRORED:
        return check_cor22(n, params)
    claim = ClaimId.THM21
    if (v := _gate(claim, params, n, 1)) is not None:
        return v
    xn = zeros(n, params).zeros
    xm = zeros(n + 1, params).zeros
    items = [(f"x_{{1,{n}}}", xn[0]), (f"x_{{1,{n + 1}}}", xm[0]), ("-1", -1.0)]
    for i in range(1, n):
        items += [(f"x_{{{i + 1},{n + 1}}}", xm[i]), (f"x_{{{i + 1},{n}}}", xn[i])]
    items += [(f"x_{{{n + 1},{n + 1}}}", xm[n]), ("1", 1.0)]
    wit = _chain_witnesses(items)

    inner_n, inner_m = [z for z in xn if z > -1], [z for z in xm if z > -1]
    if not (len(inner_m) == len(inner_n) + 1 and interlace_consecutive(inner_m, inner_n)):
        wit.append(Witness(None, None, None, "interior zeros of degrees n and n+1 do not interlace"))
    aug = sorted([*xn, -1.0])
    if not interlace_equal(aug, xm):
        wit += _equal_witnesses(_labelled("(1+x)P_n", aug, n + 1), _labelled("x", xm, n + 1)) or [
            Witness(None, None, None, "(1+x)P_n does not interlace with P_{n+1}")
        ]
    return _verdict(claim, wit, x1=xn[0], x1_next=xm[0])


def check_cor22(n: int, params: ParamPair) -> InterlacingVerdict:
    """Mirrored regime (``-2 < alpha < -1, beta > -1``), items (i)-(iv)."""
    claim = ClaimId.COR22
    if (v := _gate(claim, params, n, 2, Regime.QUASI_ORDER1_MIRRORED)) is not None:
        return v
    xn = zeros(n, params).zeros
    xm = zeros(n + 1, params).zeros
    wit = []
    aug = sorted([*xn, 1.0])
    if not interlace_equal(aug, xm):
        wit += _equal_witnesses(_labelled("(1-x)P_n", aug, n + 1), _labelled("x", xm, n + 1)) or [
            Witness(None, None, None, "(i) (1-x)P_n does not interlace with P_{n+1}")
        ]
    inner_n, inner_m = [z for z in xn if z < 1], [z for z in xm if z < 1]
    if not (len(inner_m) == len(inner_n) + 1 and interlace_consecutive(inner_m, inner_n)):
        wit.append(Witness(-1.0, 1.0, None, "(ii) interior zeros do not interlace"))
    if interlace_consecutive(xm, xn):
        wit.append(Witness(None, None, None, "(iii) all zeros of degrees n and n+1 interlace"))
    if not (1 < xm[-1] < xn[-1]):
        wit.append(Witness(1.0, xn[-1], xm[-1], "(iv) outer zero > 1 does not decrease with n"))
    return _verdict(claim, wit, outer=xn[-1], outer_next=xm[-1])


def check_cor_noninterlace(n: int, k: int, params: ParamPair) -> InterlacingVerdict:
    """Zeros of ``P_{n-k}`` and ``P_n`` never interlace (``n >= 3``, ``1 <= k < n``)."""
    claim = ClaimId.COR_NONINTERLACE
    if (v := _gate(claim, params, n, 3)) is not None:
        return v
    if not 1 <= k <= n - 1:
        raise InvalidParameter(f"k must lie in 1..{n - 1}, got {k}")
    big = zeros(n, params).zeros
    small = zeros(n - k, params).zeros
    interl = interlace_consecutive(big, small) if k == 1 else interlace_stieltjes(big, small)
    outside = [s for s in small if not big[0] < s < big[-1]]
    notes = ""
    if outside:
        notes = f"zero {outside[0]!r} of P_{n - k} lies outside (x_{{1,{n}}}, x_{{{n},{n}}})"
    wit = [Witness(big[0], big[-1], None, f"zeros of P_{n - k} and P_{n} interlace")] if interl else []
    return _verdict(claim, wit, notes, x1=big[0], x1_small=small[0])


def check_thm31(n: int, params: ParamPair, tol: float = COPRIME_TOL) -> InterlacingVerdict:
    """Zeros of ``(x+1)(x-d_n)P_{n-2}`` interlace with those of ``P_n`` when co-prime."""
    claim = ClaimId.THM31
    if (v := _gate(claim, params, n, 3)) is not None:
        return v
    xn = zeros(n, params).zeros
    xs = zeros(n - 2, params).zeros
    sep = min_separation(xn, xs)
    d_n = recurrence_coeffs(n, params).d_n
    if sep <= tol:
        return InterlacingVerdict(claim, False, False, notes=f"co-primality indeterminate (separation {sep:.3g})",
                                  boundary=True, values={"d_n": d_n})
    aug = sorted([*xs, -1.0, d_n])
    wit = [] if interlace_equal(aug, xn) else _equal_witnesses(
        _labelled("(x+1)(x-d_n)P_{n-2}", aug, n), _labelled("x", xn, n))
    return _verdict(claim, wit, d_n=d_n)


# --- equal degree, beta shifted by two ---------------------------------------


def check_thm41(n: int, params: ParamPair) -> InterlacingVerdict:
    """``P_n^(a,b)`` and ``P_n^(a,b+2)`` interlace iff ``delta < x_{2,n}``."""
    claim = ClaimId.THM41
    if (v := _gate(claim, params, n, 1)) is not None:
        return v
    delta = askey_delta(n, params)
    x = zeros(n, params).zeros
    z = zeros_orthogonal(n, params.shifted(dbeta=2)).zeros
    x2 = x[1] if n > 1 else math.inf
    values = {"delta": delta, "x1": x[0], "x2": x2 if n > 1 else None}
    if abs(delta - x2) < TIE_TOL:
        return InterlacingVerdict(claim, False, False, notes="CommonZeroBoundary: delta = x_{2,n}",
                                  boundary=True, values=values)
    interl = interlace_equal(x, z)
    condition = delta < x2
    values.update(interlacing=interl, condition=condition)
    wit = []
    if interl != condition:
        wit = [Witness(delta, x2, None,
                       f"interlacing={interl} but delta < x_2 is {condition}")]
    return _verdict(claim, wit, **values)


def check_thm42(n: int, params: ParamPair, tol: float = COPRIME_TOL) -> InterlacingVerdict:
    """When ``delta > x_{2,n}`` and no common zeros: the interior zeros of
    ``P_n`` together with ``delta`` interlace with the zeros of ``P_n^(a,b+2)``;
    the remaining zero ``x_{1,n}`` lies below ``-1`` and so below all of them."""
    claim = ClaimId.THM42
    if (v := _gate(claim, params, n, 2)) is not None:
        return v
    delta = askey_delta(n, params)
    x = zeros(n, params).zeros
    z = zeros_orthogonal(n, params.shifted(dbeta=2)).zeros
    values = {"delta": delta, "x1": x[0], "x2": x[1]}
    sep = min_separation(x, z)
    if abs(delta - x[1]) < TIE_TOL or sep <= tol:
        return InterlacingVerdict(claim, False, False, boundary=True, values=values,
                                  notes=f"CommonZeroBoundary (|delta-x_2|={abs(delta - x[1]):.3g}, separation {sep:.3g})")
    if delta < x[1]:
        return _vacuous(claim, "delta < x_{2,n}: covered by thm41", **values)
    aug = sorted([*x[1:], delta])
    wit = [] if interlace_equal(aug, z) else _equal_witnesses(
        _labelled("(x-delta)P_n interior", aug, n), _labelled("z", z, n))
    if not x[0] < -1 < z[0]:
        wit.append(Witness(None, z[0], x[0], "x_{1,n} < -1 < z_{1,n} fails"))
    return _verdict(claim, wit, **values)


def check_thm43(n: int, params: ParamPair, tol: float = COPRIME_TOL) -> InterlacingVerdict:
    """``x_1 < -1 < x_2 < z_1 < x_3 < ... < x_n < z_{n-1}`` with z the zeros of
    ``P_{n-1}^(a,b+2)``, plus co-primality and ``z_{n-1} < 1``."""
    claim = ClaimId.THM43
    if (v := _gate(claim, params, n, 2)) is not None:
        return v
    x = zeros(n, params).zeros
    z = zeros_orthogonal(n - 1, params.shifted(dbeta=2)).zeros
    items = [(f"x_{{1,{n}}}", x[0]), ("-1", -1.0)]
    items += _alternate(_labelled("x", x, n)[1:], _labelled("z", z, n - 1))
    wit = _chain_witnesses(items)
    if not z[-1] < 1:
        wit.append(Witness(None, 1.0, z[-1], "largest zero of P_{n-1}^(a,b+2) is not below 1"))
    sep = min_separation(x, z)
    if sep <= tol:
        wit.append(Witness(None, None, None, f"not co-prime: zero separation {sep:.3g}"))
    return _verdict(claim, wit, separation=sep)


def check_thm51(n: int, params: ParamPair, t: float, tol: float = COPRIME_TOL) -> InterlacingVerdict:
    """Zeros of ``P_{n-2}^(a,b+t)`` against the interior zeros of ``P_n``.

    ``t = 1``: together with an extra point they interlace (co-primality
    assumed). ``2 <= t <= 4``: they interlace one per gap and are co-prime.
    """
    t = float(t)
    if t == 1.0:
        claim = ClaimId.THM51I
    elif 2.0 <= t <= 4.0:
        claim = ClaimId.THM51II
    else:
        raise UnsupportedShift(f"t={t!r}: interlacing is proved only for t = 1 and 2 <= t <= 4")
    if (v := _gate(claim, params, n, 3)) is not None:
        return v
    a, b = params.alpha, params.beta
    x = zeros(n, params).zeros
    inner = list(x[1:])
    inner_items = [(f"x_{{{i + 2},{n}}}", v) for i, v in enumerate(inner)]
    w = zeros_orthogonal(n - 2, params.shifted(dbeta=t)).zeros
    sep = min_separation(x, w)
    if claim is ClaimId.THM51I:
        point = 2 * (n + b) * (a + b + n) / ((a + b + 2 * n) * (a + b + 2 * n - 1)) - 1
        k1, k2, _, _ = k_constants(n, params)
        values = {"point": point, "k_ratio_point": k1 / k2 - 1}
        if sep <= tol:
            return InterlacingVerdict(claim, False, False, boundary=True, values=values,
                                      notes=f"co-primality indeterminate (separation {sep:.3g})")
        if point < -1:
            where = "point below -1"
        elif not inner[0] < point < inner[-1]:
            where = "point outside the interior span"
        else:
            where = "point inside the interior span"
        aug = sorted([*w, point])
        wit = [] if interlace_equal(aug, inner) else _equal_witnesses(
            _labelled("w+point", aug, n - 1), inner_items)
        return _verdict(claim, wit, where, **values)
    wit = []
    if not interlace_consecutive(inner, w):
        wit = _chain_witnesses(_alternate(inner_items, _labelled("w", w, n - 2)))
    if sep <= tol:
        wit.append(Witness(None, None, None, f"not co-prime: zero separation {sep:.3g}"))
    return _verdict(claim, wit, t=t, separation=sep)


def check_eq45(n: int, params: ParamPair) -> InterlacingVerdict:
    """``-1 < y_1 < z_1 < y_2 < ... < y_n < z_n < 1`` for ``P_n^(a,b+1)``, ``P_n^(a,b+2)``."""
    claim = ClaimId.EQ45
    if (v := _gate(claim, params, n, 1)) is not None:
        return v
    y = zeros_orthogonal(n, params.shifted(dbeta=1)).zeros
    z = zeros_orthogonal(n, params.shifted(dbeta=2)).zeros
    items = [("-1", -1.0)] + _alternate(_labelled("y", y, n), _labelled("z", z, n)) + [("1", 1.0)]
    return _verdict(claim, _chain_witnesses(items))


def check_thm61(n: int, params: ParamPair) -> InterlacingVerdict:
    """``-1 + A_n < -1 + D_n/C_n < x_{1,n} < -B_n < -1``."""
    claim = ClaimId.THM61
    if (v := _gate(claim, params, n, 3)) is not None:
        return v
    bc = bound_chain(n, params)
    x1 = zeros(n, params).zeros[0]
    items = [("-1+A_n", bc.loose_lower), ("-1+D_n/C_n", bc.tight_lower), (f"x_{{1,{n}}}", x1),
             ("-B_n", bc.upper), ("-1", -1.0)]
    return _verdict(claim, _chain_witnesses(items), x1=x1, loose_lower=bc.loose_lower,
                    tight_lower=bc.tight_lower, upper=bc.upper)


# --- monotonicity ------------------------------------------------------------


def outer_zero_monotonicity(params: ParamPair, ns) -> list[Witness]:
    """Violations of: the outer zero increases with n (decreases, mirrored)."""
    ns = list(ns)
    mirrored = params.regime is Regime.QUASI_ORDER1_MIRRORED
    outer = [zeros(n, params).zeros[-1 if mirrored else 0] for n in ns]
    if mirrored:
        outer = [-v for v in outer]
    items = [(f"outer_{n}", v) for n, v in zip(ns, outer)]
    return _chain_witnesses(items)


def shift_monotonicity(n: int, params: ParamPair, ts=(2.0, 2.5, 3.0, 3.5, 4.0)) -> list[Witness]:
    """Violations of: each zero of ``P_{n-2}^(a,b+t)`` strictly increases in t."""
    sets = [zeros_orthogonal(n - 2, params.shifted(dbeta=t)).zeros for t in ts]
    wit = []
    for i in range(n - 2):
        wit += _chain_witnesses([(f"w_{i + 1}(t={t:g})", s[i]) for t, s in zip(ts, sets)])
    return wit


def check(claim, n: int, params: ParamPair, t: float | None = None, k: int | None = None,
          tol: float = COPRIME_TOL) -> InterlacingVerdict:
    """Dispatch by claim id (string or :class:`ClaimId`)."""
    claim = ClaimId(claim)
    if claim in (ClaimId.THM51I, ClaimId.THM51II):
        if t is None:
            t = 1.0 if claim is ClaimId.THM51I else 2.0
        v = check_thm51(n, params, t, tol)
        if v.claim_id is not claim:
            raise UnsupportedShift(f"t={t!r} does not belong to {claim.value}")
        return v
    if claim is ClaimId.COR_NONINTERLACE:
        return check_cor_noninterlace(n, 1 if k is None else k, params)
    table = {
        ClaimId.LEMMA15: check_lemma15,
        ClaimId.LEMMA15A: check_lemma15a,
        ClaimId.LEMMA15B: check_lemma15b,
        ClaimId.THM21: check_thm21,
        ClaimId.COR22: check_cor22,
        ClaimId.THM41: check_thm41,
        ClaimId.EQ45: check_eq45,
        ClaimId.THM61: check_thm61,
    }
    if claim in table:
        return table[claim](n, params)
    return {ClaimId.THM31: check_thm31, ClaimId.THM42: check_thm42, ClaimId.THM43: check_thm43}[claim](n, params, tol)
