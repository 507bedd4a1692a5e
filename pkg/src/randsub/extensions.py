"""Variants of the randomized game: state-dependent move sets and several piles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import InvalidSetError, ResourceLimitError
from .recurrence import SubtractionSet, make_set, parse_set

PILE_FIRST = "pile-first"
UNIFORM_MOVES = "uniform-moves"
DEFAULT_MEMO_BUDGET = 2_000_000


# ---------------------------------------------------------------- dynamic sets


def dynamic_one_or_all(n: int) -> Fraction:
    """Move is "take one chip" or "take the whole pile", each with probability 1/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    a = Fraction(0)
    for _ in range(n):
        a = 1 - a / 2
    return a


def dynamic_one_or_all_closed(n: int) -> Fraction:
    return Fraction(2, 3) * (1 - Fraction(-1, 2) ** n)


def take_any_sequence(n_max: int) -> list[Fraction]:
    """Any positive amount up to the whole pile may be removed."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    out = [Fraction(0), Fraction(1)][: n_max + 1]
    total = sum(out, Fraction(0))
    for n in range(2, n_max + 1):
        v = 1 - total / n
        out.append(v)
        total += v
    return out


def take_any(n: int) -> Fraction:
    return take_any_sequence(n)[n]


# ---------------------------------------------------------------- several piles


@dataclass(frozen=True)
class MultiPileGame:
    sets: tuple[SubtractionSet, ...]

    def __post_init__(self):
        if not self.sets:
            raise InvalidSetError("a multi-pile game needs at least one pile")

    @property
    def r(self) -> int:
        return len(self.sets)

    @classmethod
    def parse(cls, text: str) -> MultiPileGame:
        """``"1;1,2"`` -> piles with sets {1} and {1,2}."""
        return cls(tuple(parse_set(chunk) for chunk in text.split(";")))

    @classmethod
    def of(cls, *sets: Sequence[int]) -> MultiPileGame:
        return cls(tuple(make_set(s) for s in sets))


@dataclass(frozen=True)
class PilePosition:
    counts: tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(c, int) or c < 0 for c in self.counts):
            raise InvalidSetError(f"pile sizes must be non-negative integers: {self.counts}")

    @classmethod
    def parse(cls, text: str) -> PilePosition:
        try:
            return cls(tuple(int(x) for x in text.split(",") if x.strip()))
        except ValueError:
            raise InvalidSetError(f"cannot parse position {text!r}") from None


class MultipileResult(NamedTuple):
    value: Fraction
    visited: int


def solve_multipile(
    game: MultiPileGame,
    pos: PilePosition,
    mode: str = PILE_FIRST,
    memo_budget: int = DEFAULT_MEMO_BUDGET,
) -> MultipileResult:
    """Win probability of the player to move, plus the number of states solved.

    ``pile-first``: a pile is chosen uniformly among piles with a legal move,
    then an amount uniformly among that pile's legal amounts.  Away from the
    boundary this gives every move weight ``1 / (r |S_j|)``.
    ``uniform-moves``: one draw over all legal (pile, amount) pairs.

    The two conventions give identical values.  The player to move wins iff
    the total number of moves is odd, and the number of moves spent in each
    pile depends only on that pile's own draws, whatever order piles are
    visited in.
    """
    if mode not in (PILE_FIRST, UNIFORM_MOVES):
        raise ValueError(f"unknown mode {mode!r}")
    if len(pos.counts) != game.r:
        raise InvalidSetError(f"position has {len(pos.counts)} piles, game has {game.r}")

    # piles with equal sets are interchangeable
    rank = {s: i for i, s in enumerate(sorted(set(game.sets), key=lambda s: s.elements))}
    tags = [rank[s] for s in game.sets]
    elements = [s.elements for s in game.sets]

    def key(counts):
        return tuple(sorted(zip(tags, counts)))

    def children(counts):
        groups = []
        for j, n in enumerate(counts):
            moves = [k for k in elements[j] if k <= n]
            if moves:
                groups.append(
                    [counts[:j] + (n - k,) + counts[j + 1 :] for k in moves]
                )
        return groups

    memo: dict = {}
    start = pos.counts
    stack = [start]
    while stack:
        counts = stack[-1]
        kc = key(counts)
        if kc in memo:
            stack.pop()
            continue
        groups = children(counts)
        pending = [c for g in groups for c in g if key(c) not in memo]
        if pending:
            stack.extend(pending)
            continue
        if not groups:
            memo[kc] = Fraction(0)
        elif mode == PILE_FIRST:
            acc = Fraction(0)
            for g in groups:
                acc += sum((memo[key(c)] for c in g), Fraction(0)) / len(g)
            memo[kc] = 1 - acc / len(groups)
        else:
            flat = [memo[key(c)] for g in groups for c in g]
            memo[kc] = 1 - sum(flat, Fraction(0)) / len(flat)
        stack.pop()
        if len(memo) > memo_budget:
            raise ResourceLimitError(f"multi-pile memo exceeded {memo_budget} states")
    return MultipileResult(memo[key(start)], len(memo))


def multipile_value(game: MultiPileGame, pos: PilePosition, mode: str = PILE_FIRST) -> Fraction:
    return solve_multipile(game, pos, mode).value
