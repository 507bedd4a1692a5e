"""Win-probability sequences of randomized one-pile subtraction games.

``a_n`` is the probability that the player about to move wins from a pile of
``n`` chips when every turn removes a uniformly random legal amount from the
subtraction set.  For ``n >= max(S)`` all moves are legal and

    a_n = 1 - (1/t) * sum(a_{n-k} for k in S)

while smaller piles behave like the game on ``S`` minus its largest element.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidSetError, ResourceLimitError

EXACT = "exact"
FLOAT = "float64"
MODES = (EXACT, FLOAT)

# bits allowed in either numerator or denominator of one exact value
DEFAULT_BIT_BUDGET = 1 << 20

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SubtractionSet:
    """Sorted, duplicate-free set of legal move sizes."""

    elements: tuple[int, ...]

    def __post_init__(self):
        els = self.elements
        if not els:
            raise InvalidSetError("subtraction set must be non-empty")
        if any(not isinstance(k, int) or isinstance(k, bool) for k in els):
            raise InvalidSetError(f"elements must be integers: {els!r}")
        if any(k < 1 for k in els):
            raise InvalidSetError(f"elements must be positive: {els!r}")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise InvalidSetError(f"elements must be strictly increasing: {els!r}")

    @property
    def t(self) -> int:
        return len(self.elements)

    @property
    def k_max(self) -> int:
        return self.elements[-1]

    @property
    def g(self) -> int:
        return math.gcd(*self.elements)

    @property
    def all_odd(self) -> bool:
        return all(k % 2 for k in self.elements)

    @property
    def d_values(self) -> tuple[int, ...]:
        """Exponent offsets ``k_max - k_i`` for the smaller elements, then ``k_max``."""
        top = self.k_max
        return tuple(top - k for k in self.elements[:-1]) + (top,)

    def without_max(self) -> SubtractionSet:
        if self.t == 1:
            raise InvalidSetError("cannot drop the only element of a set")
        return SubtractionSet(self.elements[:-1])

    def scaled(self, m: int) -> SubtractionSet:
        return SubtractionSet(tuple(m * k for k in self.elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


def make_set(elems: Iterable[int]) -> SubtractionSet:
    """Validate, sort and deduplicate ``elems``."""
    items = list(elems)
    if not items:
        raise InvalidSetError("subtraction set must be non-empty")
    for k in items:
        if isinstance(k, bool) or not isinstance(k, int):
            raise InvalidSetError(f"not an integer: {k!r}")
        if k < 1:
            raise InvalidSetError(f"non-positive entry {k} in subtraction set")
    return SubtractionSet(tuple(sorted(set(items))))


def parse_set(text: str) -> SubtractionSet:
    """Parse ``"3,5"`` (spaces allowed) into a set."""
    parts = [p.strip() for p in text.replace(" ", ",").split(",") if p.strip()]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise InvalidSetError(f"cannot parse subtraction set {text!r}") from None
    return make_set(values)


def gcd_reduce(S: SubtractionSet) -> tuple[SubtractionSet, int]:
    """Divide out the common factor: ``a^S_{m n} = a^{S/m}_n``."""
    m = S.g
    return SubtractionSet(tuple(k // m for k in S.elements)), m


def single_move_value(n: int, k: int) -> Fraction:
    """Value for ``S = {k}``: blocks of ``k`` zeros then ``k`` ones."""
    if n < 0 or k < 1:
        raise ValueError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    return Fraction((n // k) % 2)


@lru_cache(maxsize=4096)
def _base_prefix(elements: tuple[int, ...]) -> tuple[Fraction, ...]:
    S = SubtractionSet(elements)
    if S.t == 1:
        return ()
    reduced = S.without_max()
    return tuple(_exact_values(reduced, S.k_max - 1))


def base_values(S: SubtractionSet) -> list[Fraction]:
    """Exact ``a_0 .. a_{k_max-1}``, taken from ``S`` minus its largest element.

    Returns an empty list for single-element sets, whose values all come from
    the block formula.
    """
    return list(_base_prefix(S.elements))


def initial_window(S: SubtractionSet) -> list[Fraction]:
    """First ``k_max`` exact values, including the single-element case."""
    if S.t == 1:
        return [single_move_value(n, S.k_max) for n in range(S.k_max)]
    return base_values(S)


def _check_budget(v: Fraction, budget: int | None, n: int) -> None:
    if budget is None:
        return
    if v.denominator.bit_length() > budget or v.numerator.bit_length() > budget:
        raise ResourceLimitError(
            f"exact value a_{n} needs more than {budget} bits; use float mode"
        )


def iter_sequence(
    S: SubtractionSet, mode: str = EXACT, bit_budget: int | None = DEFAULT_BIT_BUDGET
) -> Iterator:
    """Yield ``a_0, a_1, ...`` forever, keeping only the last ``k_max`` values."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    exact = mode == EXACT
    K = S.k_max
    if S.t == 1:
        one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
        n = 0
        while True:
            yield one if (n // K) % 2 else zero
            n += 1

    prefix = base_values(S)
    yield from (prefix if exact else [float(v) for v in prefix])
    t = S.t
    ks = S.elements
    n = K
    if exact:
        # a_m = N_m / (D0 * t^m) with integer N_m; one gcd per yielded value
        D0 = math.lcm(*(v.denominator for v in prefix))
        ring = [v.numerator * (D0 // v.denominator) * t**m for m, v in enumerate(prefix)]
        weights = [(k, t ** (k - 1)) for k in ks]
        scale = D0 * t**K
        while True:
            N = scale
            for k, w in weights:
                N -= ring[(n - k) % K] * w
            ring[n % K] = N
            v = Fraction(N, scale)
            _check_budget(v, bit_budget, n)
            yield v
            scale *= t
            n += 1
    else:
        ring = [float(v) for v in prefix]
        inv_t = 1.0 / t
        while True:
            total = 0.0
            for k in ks:
                total += ring[(n - k) % K]
            v = 1.0 - total * inv_t
            ring[n % K] = v
            yield v
            n += 1


def _exact_values(S: SubtractionSet, n_max: int, bit_budget=DEFAULT_BIT_BUDGET):
    it = iter_sequence(S, EXACT, bit_budget)
    return [next(it) for _ in range(n_max + 1)]


@dataclass(frozen=True)
class SequenceRun:
    """Values ``a_0 .. a_{n_max}`` of one set in one numeric mode."""

    set: SubtractionSet
    mode: str
    values: tuple

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def rows(self) -> list[dict]:
        out = []
        for n, v in enumerate(self.values):
            if isinstance(v, Fraction):
                exact = f"{v.numerator}/{v.denominator}"
            else:
                exact = ""
            out.append({"n": n, "value_exact": exact, "value_float": float(v)})
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf, fieldnames=["n", "value_exact", "value_float"], lineterminator="\n"
        )
        writer.writeheader()
        for row in self.rows():
            writer.writerow({**row, "value_float": repr(row["value_float"])})
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "set": list(self.set.elements),
            "mode": self.mode,
            "n_max": self.n_max,
            "rows": self.rows(),
        }
        return json.dumps(doc)


def eval_sequence(
    S: SubtractionSet,
    n_max: int,
    mode: str = EXACT,
    bit_budget: int | None = DEFAULT_BIT_BUDGET,
) -> SequenceRun:
    """Evaluate ``a_0 .. a_{n_max}``.

    Exact mode uses :class:`fractions.Fraction` and raises
    :class:`ResourceLimitError` once a value needs more than ``bit_budget``
    bits.  Use :func:`iter_sequence` directly when only a tail is needed.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    it = iter_sequence(S, mode, bit_budget)
    return SequenceRun(S, mode, tuple(next(it) for _ in range(n_max + 1)))


def signed_deviation(run: SequenceRun, n: int):
    """``(-1)^n (a_n - 1/2)``; tends to the coefficient of ``(-1)^n``."""
    if not 0 <= n <= run.n_max:
        raise IndexError(f"index {n} outside 0..{run.n_max}")
    half = Fraction(1, 2) if run.mode == EXACT else 0.5
    dev = run.values[n] - half
    return dev if n % 2 == 0 else -dev


def values_at(S: SubtractionSet, indices: Sequence[int], mode: str = FLOAT) -> dict:
    """Stream the sequence and keep only the requested indices."""
    wanted = set(indices)
    if not wanted:
        return {}
    last = max(wanted)
    out = {}
    for n, v in enumerate(iter_sequence(S, mode)):
        if n in wanted:
            out[n] = v
        if n >= last:
            break
    return out
