"""Permutations, classical pattern containment, symmetries, and statistics.

Permutations are written in one-line notation over {1, ..., n}.  A
permutation p contains a pattern q when some subsequence of p is
order-isomorphic to q; avoidance is the negation.  Pattern sets are kept
in a canonical (lexicographic) order so they can serve as stable
dictionary keys and serialization targets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


class Permutation:
    """An immutable permutation of {1, ..., n} in one-line notation."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[int]):
        vals = tuple(values)
        n = len(vals)
        if sorted(vals) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {vals}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_string(cls, text: str) -> "Permutation":
        """Parse "1342" (digits, n <= 9) or "10,2,1,..." (comma-separated)."""
        text = text.strip()
        if not text:
            return cls(())
        if "," in text:
            return cls(int(tok) for tok in text.split(","))
        if not text.isdigit():
            raise ValueError(f"malformed permutation string: {text!r}")
        return cls(int(ch) for ch in text)

    def __str__(self) -> str:
        if len(self.values) <= 9:
            return "".join(str(v) for v in self.values)
        return ",".join(str(v) for v in self.values)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __lt__(self, other: "Permutation") -> bool:
        return self.values < other.values

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    def reverse(self) -> "Permutation":
        return Permutation(self.values[::-1])

    def complement(self) -> "Permutation":
        n = len(self.values)
        return Permutation(n + 1 - v for v in self.values)

    def inverse(self) -> "Permutation":
        n = len(self.values)
        inv = [0] * n
        for pos, v in enumerate(self.values):
            inv[v - 1] = pos + 1
        return Permutation(inv)

    def delete(self, index: int) -> "Permutation":
        """Remove the entry at `index` and standardize the rest."""
        rest = self.values[:index] + self.values[index + 1:]
        return Permutation(standardize(rest))


def standardize(word: Iterable[int]) -> tuple[int, ...]:
    """Relabel a word of distinct integers order-isomorphically onto 1..k."""
    word = tuple(word)
    rank = {v: i + 1 for i, v in enumerate(sorted(word))}
    return tuple(rank[v] for v in word)


def _signature(word: tuple[int, ...]) -> tuple[bool, ...]:
    """Pairwise-comparison signature; equal iff words are order-isomorphic."""
    return tuple(word[i] < word[j]
                 for i in range(len(word)) for j in range(i + 1, len(word)))


def contains(p: Permutation, q: Permutation) -> bool:
    """True iff p has a subsequence order-isomorphic to q."""
    k = len(q)
    if k == 0:
        return True
    if k > len(p):
        return False
    target = _signature(q.values)
    for sub in combinations(p.values, k):
        if _signature(sub) == target:
            return True
    return False


class PatternSet:
    """A canonically ordered set of distinct nonempty patterns."""

    __slots__ = ("patterns",)

    def __init__(self, patterns: Iterable[Permutation]):
        pats = sorted(set(patterns))
        if not pats:
            raise ValueError("pattern set must be nonempty")
        if any(len(q) == 0 for q in pats):
            raise ValueError("patterns must be nonempty permutations")
        object.__setattr__(self, "patterns", tuple(pats))

    @classmethod
    def from_string(cls, text: str) -> "PatternSet":
        """Parse a comma-joined list of digit-string patterns."""
        toks = [tok for tok in text.split(",") if tok.strip()]
        return cls(Permutation.from_string(tok) for tok in toks)

    def __str__(self) -> str:
        return ",".join(str(q) for q in self.patterns)

    def __repr__(self) -> str:
        return f"PatternSet({str(self)!r})"

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PatternSet) and self.patterns == other.patterns

    def __hash__(self) -> int:
        return hash(self.patterns)

    def __lt__(self, other: "PatternSet") -> bool:
        return self.patterns < other.patterns

    def __setattr__(self, name, value):
        raise AttributeError("PatternSet is immutable")

    def map(self, op) -> "PatternSet":
        return PatternSet(op(q) for q in self.patterns)


def avoids(p: Permutation, t: PatternSet) -> bool:
    """True iff p contains no pattern of t."""
    return not any(contains(p, q) for q in t)


def symmetry_class(t: PatternSet) -> set[PatternSet]:
    """Orbit of t under simultaneous reverse/complement/inverse."""
    orbit = {t}
    frontier = [t]
    while frontier:
        s = frontier.pop()
        for op in (Permutation.reverse, Permutation.complement,
                   Permutation.inverse):
            image = s.map(op)
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return orbit


class StatisticKind(enum.Enum):
    LR_MAX_COUNT = "lr_max_count"
    RL_MAX_COUNT = "rl_max_count"
    VALUE_AT_FROM_START = "value_from_start"
    VALUE_AT_FROM_END = "value_from_end"
    LR_MAX_VALUES_ARE_TOP_INTERVAL = "lr_max_top_interval"
    LAST_POSITION_HOLDS_MAX = "last_is_max"


_POSITIONAL = {StatisticKind.VALUE_AT_FROM_START,
               StatisticKind.VALUE_AT_FROM_END}


@dataclass(frozen=True)
class Statistic:
    """A structural statistic, optionally parameterized by a 1-based position."""

    kind: StatisticKind
    position: int | None = None

    def __post_init__(self):
        if self.kind in _POSITIONAL:
            if self.position is None or self.position < 1:
                raise ValueError(f"{self.kind.value} needs a position >= 1")
        elif self.position is not None:
            raise ValueError(f"{self.kind.value} takes no position")

    @classmethod
    def lr_max_count(cls) -> "Statistic":
        return cls(StatisticKind.LR_MAX_COUNT)

    @classmethod
    def rl_max_count(cls) -> "Statistic":
        return cls(StatisticKind.RL_MAX_COUNT)

    @classmethod
    def value_at_from_start(cls, k: int) -> "Statistic":
        return cls(StatisticKind.VALUE_AT_FROM_START, k)

    @classmethod
    def value_at_from_end(cls, k: int) -> "Statistic":
        return cls(StatisticKind.VALUE_AT_FROM_END, k)

    @classmethod
    def lr_max_top_interval(cls) -> "Statistic":
        return cls(StatisticKind.LR_MAX_VALUES_ARE_TOP_INTERVAL)

    @classmethod
    def last_is_max(cls) -> "Statistic":
        return cls(StatisticKind.LAST_POSITION_HOLDS_MAX)

    @classmethod
    def from_string(cls, text: str) -> "Statistic":
        """Parse "lr_max_count" or "value_from_start:2" style names."""
        name, _, arg = text.strip().partition(":")
        for kind in StatisticKind:
            if kind.value == name:
                pos = int(arg) if arg else None
                return cls(kind, pos)
        raise ValueError(f"unknown statistic: {text!r}")

    def __str__(self) -> str:
        if self.position is not None:
            return f"{self.kind.value}:{self.position}"
        return self.kind.value


def lr_maxima_values(values: tuple[int, ...]) -> list[int]:
    out = []
    best = 0
    for v in values:
        if v > best:
            out.append(v)
            best = v
    return out


def eval_statistic(p: Permutation, s: Statistic) -> int:
    """Evaluate s on p; positional statistics error when out of range."""
    vals = p.values
    n = len(vals)
    kind = s.kind
    if kind is StatisticKind.LR_MAX_COUNT:
        return len(lr_maxima_values(vals))
    if kind is StatisticKind.RL_MAX_COUNT:
        return len(lr_maxima_values(vals[::-1]))
    if kind is StatisticKind.VALUE_AT_FROM_START:
        if s.position > n:
            raise ValueError(f"position {s.position} out of range for n={n}")
        return vals[s.position - 1]
    if kind is StatisticKind.VALUE_AT_FROM_END:
        if s.position > n:
            raise ValueError(f"position {s.position} out of range for n={n}")
        return vals[n - s.position]
    if kind is StatisticKind.LR_MAX_VALUES_ARE_TOP_INTERVAL:
        maxima = lr_maxima_values(vals)
        m = len(maxima)
        return int(maxima == list(range(n - m + 1, n + 1)))
    if kind is StatisticKind.LAST_POSITION_HOLDS_MAX:
        return int(n > 0 and vals[-1] == n)
    raise ValueError(f"unhandled statistic kind: {kind}")
