"""Limit behaviour of the win-probability sequences.

Once ``S`` is divided by its gcd, an even element forces ``a_n -> 1/2``.  For
an all-odd set ``-1`` is a simple root of ``chi_S``, and the coefficient
``alpha1`` of ``(-1)^n`` gives the even/odd subsequence limits
``1/2 + alpha1`` and ``1/2 - alpha1``.  For three or more elements that
limit statement assumes all roots are simple; the verdict says whether this
was checked for the instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .charpoly import characteristic_poly, quotient_closed_form, square_free_test
from .recurrence import (
    FLOAT,
    SubtractionSet,
    gcd_reduce,
    initial_window,
    iter_sequence,
    single_move_value,
)
from .roots import DEFAULT_UNIT_EPS, analyze_roots

HALF = Fraction(1, 2)


def _fmt(q: Fraction | None):
    return None if q is None else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class Verdict:
    """Common fields: the input set, its gcd-reduced form and the factor.

    When ``factor > 1`` the reduced verdict describes ``a_n`` as a function of
    ``n // factor`` (all positions ``m q .. m q + m - 1`` share one value).
    """

    set: SubtractionSet
    reduced: SubtractionSet
    factor: int

    kind = "verdict"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "set": list(self.set.elements),
            "reduced_set": list(self.reduced.elements),
            "factor": self.factor,
        }


@dataclass(frozen=True)
class Periodic(Verdict):
    period: int = 0

    kind = "periodic"

    def to_dict(self):
        return {**super().to_dict(), "period": self.period}


@dataclass(frozen=True)
class ConvergesToHalf(Verdict):
    reason: str = ""

    kind = "converges_to_half"

    def to_dict(self):
        return {**super().to_dict(), "reason": self.reason, "limit": "1/2"}


@dataclass(frozen=True)
class Oscillates(Verdict):
    alpha1: Fraction = Fraction(0)

    kind = "oscillates"

    def __post_init__(self):
        if self.alpha1 == 0:
            raise ValueError("an oscillating verdict needs alpha1 != 0")

    @property
    def even_limit(self) -> Fraction:
        return HALF + self.alpha1

    @property
    def odd_limit(self) -> Fraction:
        return HALF - self.alpha1

    def to_dict(self):
        return {
            **super().to_dict(),
            "alpha1": _fmt(self.alpha1),
            "even_limit": _fmt(self.even_limit),
            "odd_limit": _fmt(self.odd_limit),
        }


@dataclass(frozen=True)
class ConditionalOscillation(Verdict):
    alpha1: Fraction = Fraction(0)
    simple_roots_verified: bool = False

    kind = "conditional_oscillation"

    @property
    def even_limit(self) -> Fraction:
        return HALF + self.alpha1

    @property
    def odd_limit(self) -> Fraction:
        return HALF - self.alpha1

    def to_dict(self):
        return {
            **super().to_dict(),
            "alpha1": _fmt(self.alpha1),
            "even_limit": _fmt(self.even_limit),
            "odd_limit": _fmt(self.odd_limit),
            "simple_roots_verified": self.simple_roots_verified,
        }


# ---------------------------------------------------------------- alpha1 routes


def _check_pair(k: int, l: int) -> None:
    if not (0 < k < l and k % 2 and l % 2 and math.gcd(k, l) == 1):
        raise ValueError(f"need odd coprime 0 < k < l, got k={k}, l={l}")


class LemmaSums(NamedTuple):
    direct1: Fraction
    direct2: Fraction
    closed1: Fraction
    closed2: Fraction

    @property
    def agree1(self) -> bool:
        return self.direct1 == self.closed1

    @property
    def agree2(self) -> bool:
        return self.direct2 == self.closed2


def lemma_sums(k: int, l: int) -> LemmaSums:
    """Alternating sums of the ``{k}`` block pattern, direct and closed form.

    ``direct1 = sum_{i<l} (-1)^i a_i`` and ``direct2 = sum_{l-k<=i<l} (-1)^i a_i``.
    The closed forms are returned unmodified.  The second one is minus the
    number of +-1 terms in the window rather than their signed sum (which is
    always 0), so it disagrees with ``direct2`` for every ``k > 1``.
    """
    _check_pair(k, l)
    a = [single_move_value(i, k) for i in range(l)]
    s1 = sum(((-1) ** i * a[i] for i in range(l)), Fraction(0))
    s2 = sum(((-1) ** i * a[i] for i in range(l - k, l)), Fraction(0))
    q = l // k
    if q % 2 == 0:
        c1 = Fraction(-q, 2)
        c2 = Fraction(-k * (q + 1) + l)
    else:
        c1 = Fraction(-(q - 1), 2)
        c2 = Fraction(-l + k * q)
    return LemmaSums(s1, s2, c1, c2)


def alpha1_pair_printed(k: int, l: int) -> Fraction:
    """Two-branch closed form for ``{k, l}`` built from the lemma's closed sums.

    Kept as an audited secondary route; it inherits the lemma's second-sum
    error (e.g. gives -3/8 for ``{3, 5}`` where the true value is -1/8).
    """
    _check_pair(k, l)
    q = l // k
    if q % 2 == 0:
        inner = Fraction(-q, 2) - k * (q + 1) + l - 1
    else:
        inner = Fraction(-(q - 1), 2) - l + k * q - 1
    return inner / (l + k)


def alpha1_pair_sums(k: int, l: int) -> Fraction:
    """``(S1 + S2 - 1) / (k + l)`` with both alternating sums taken directly."""
    s = lemma_sums(k, l)
    return (s.direct1 + s.direct2 - 1) / (l + k)


def alpha1_general(S: SubtractionSet) -> Fraction:
    """Coefficient of ``(-1)^n`` for an all-odd set, exactly.

    ``alpha1 = sum_i Q_i (a_i - 1/2) / sum(S)`` where ``Q = chi_S / (x + 1)``
    and ``a_0 .. a_{k_max-1}`` are the initial values.  This is the Lagrange
    basis polynomial of the root ``-1`` applied to the initial data, so it is
    the true coefficient whenever the roots of ``chi_S`` are simple.
    """
    if not S.all_odd:
        raise ValueError(f"{S} contains an even element; alpha1 is zero by parity")
    Q = quotient_closed_form(S)
    window = initial_window(S)
    total = sum((q * (a - HALF) for q, a in zip(Q.coeffs, window)), Fraction(0))
    return total / sum(S.elements)


def alpha1_empirical(S: SubtractionSet, n_max: int) -> tuple[float, float]:
    """Mean and spread of ``(-1)^n (a_n - 1/2)`` over ``n_max//2 <= n <= n_max``.

    Float-mode streaming; spread is the largest deviation from the mean.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    lo = n_max // 2
    tail = []
    for n, v in enumerate(iter_sequence(S, FLOAT)):
        if n >= lo:
            tail.append((v - 0.5) if n % 2 == 0 else (0.5 - v))
        if n >= n_max:
            break
    mean = math.fsum(tail) / len(tail)
    spread = max(abs(x - mean) for x in tail)
    return mean, spread


def tail_index(gap: float, target: float, cap: int | None = None) -> int:
    """Smallest ``n`` with ``gap**n < target``."""
    if gap <= 0.0:
        return 1
    if gap >= 1.0:
        raise ValueError(f"spectral gap {gap} is not below 1")
    n = math.floor(math.log(target) / math.log(gap)) + 1
    return n if cap is None else min(n, cap)


# ---------------------------------------------------------------- classification


def classify(S: SubtractionSet, check_simple_roots: bool = True) -> Verdict:
    reduced, m = gcd_reduce(S)
    if reduced.t == 1:
        return Periodic(S, reduced, m, period=2 * S.elements[0])
    if not reduced.all_odd:
        evens = [k for k in reduced.elements if k % 2 == 0]
        return ConvergesToHalf(
            S, reduced, m, reason=f"even element {evens[0]} after gcd reduction"
        )
    if reduced.t == 2:
        k, l = reduced.elements
        return Oscillates(S, reduced, m, alpha1=alpha1_pair_sums(k, l))
    simple = square_free_test(characteristic_poly(reduced)) if check_simple_roots else False
    return ConditionalOscillation(
        S, reduced, m, alpha1=alpha1_general(reduced), simple_roots_verified=simple
    )


class SubsequenceLimits(NamedTuple):
    even: Fraction
    odd: Fraction
    oscillating: bool


def subsequence_limits(S: SubtractionSet) -> SubsequenceLimits:
    """Limits of ``a_n`` along even and odd ``n // g`` (``g`` the gcd of ``S``).

    Sets that converge return ``(1/2, 1/2, False)``.
    """
    reduced, _ = gcd_reduce(S)
    if not reduced.all_odd:
        return SubsequenceLimits(HALF, HALF, False)
    a1 = alpha1_general(reduced)
    return SubsequenceLimits(HALF + a1, HALF - a1, a1 != 0)


# ---------------------------------------------------------------- combined report


@dataclass
class Alpha1Result:
    via_printed_formula: Fraction | None
    via_sums: Fraction | None
    via_quotient: Fraction | None
    empirical: float | None
    empirical_spread: float | None
    empirical_n_max: int | None
    agreement: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "via_printed_formula": _fmt(self.via_printed_formula),
            "via_sums": _fmt(self.via_sums),
            "via_quotient": _fmt(self.via_quotient),
            "empirical": self.empirical,
            "empirical_spread": self.empirical_spread,
            "empirical_n_max": self.empirical_n_max,
            "agreement": self.agreement,
        }


def alpha1_report(
    S: SubtractionSet,
    n_max: int | None = None,
    empirical_tol: float = 1e-6,
    eps: float = DEFAULT_UNIT_EPS,
    n_cap: int = 10**6,
) -> Alpha1Result:
    """Every available route to ``alpha1`` for the gcd-reduced set.

    When ``n_max`` is omitted it is picked from the spectral gap so that the
    decaying part of the tail is below ``empirical_tol``.
    """
    reduced, _ = gcd_reduce(S)
    printed = sums = quotient = None
    if reduced.all_odd:
        quotient = alpha1_general(reduced)
        if reduced.t == 2:
            k, l = reduced.elements
            printed = alpha1_pair_printed(k, l)
            sums = alpha1_pair_sums(k, l)
    if n_max is None:
        gap = analyze_roots(reduced, eps, check_square_free=False).spectral_gap
        n_max = 2 * tail_index(gap, empirical_tol, cap=n_cap // 2) if gap < 1 else n_cap
    emp, spread = alpha1_empirical(reduced, n_max)
    exact = quotient if quotient is not None else Fraction(0)
    err = abs(emp - float(exact))
    # decaying modes enter the tail mean scaled by their coefficients
    agreement = {"empirical_matches_exact": err <= 10 * max(empirical_tol, spread)}
    if sums is not None:
        agreement["sums_equals_quotient"] = sums == quotient
        agreement["printed_equals_sums"] = printed == sums
        agreement["printed_mismatch"] = printed != sums
    return Alpha1Result(printed, sums, quotient, emp, spread, n_max, agreement)
