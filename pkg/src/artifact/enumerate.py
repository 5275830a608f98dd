"""Brute-force oracle: exact avoider counts via a pruned generating tree.

The tree's root is the empty permutation; the children of a length-(n-1)
node insert the new maximum n into each site.  Deletion closure of
avoidance makes pruning sound: a child is kept iff inserting the new
maximum creates no occurrence of a forbidden pattern, and any new
occurrence must use the new maximum (it is the unique largest entry), so
only subsequences through the inserted entry are checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .perm_core import (PatternSet, Permutation, Statistic, eval_statistic,
                        standardize, _signature)


@dataclass
class CountTable:
    """Exact big-integer counts indexed by permutation length.

    `engine` optionally names the producer (e.g. a recurrence engine);
    it is carried through JSON but ignored by equality.
    """

    counts: dict[int, int] = field(default_factory=dict)
    engine: str | None = None

    def __getitem__(self, n: int) -> int:
        return self.counts[n]

    def lengths(self) -> list[int]:
        return sorted(self.counts)

    def as_list(self) -> list[int]:
        return [self.counts[n] for n in self.lengths()]

    def to_json(self) -> str:
        mapping = {str(n): str(self.counts[n]) for n in self.lengths()}
        if self.engine is None:
            return json.dumps(mapping)
        return json.dumps({"engine": self.engine, "counts": mapping})

    @classmethod
    def from_json(cls, text: str) -> "CountTable":
        raw = json.loads(text)
        if set(raw) <= {"engine", "counts"} and isinstance(
                raw.get("counts"), dict):
            return cls({int(n): int(c) for n, c in raw["counts"].items()},
                       raw.get("engine"))
        return cls({int(n): int(c) for n, c in raw.items()})

    def to_csv(self) -> str:
        lines = ["n,count"]
        lines.extend(f"{n},{self.counts[n]}" for n in self.lengths())
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CountTable) and self.counts == other.counts


_RELATIVE_TARGETS = ("n",)


def resolve_target(target, n: int) -> int:
    """Resolve a clause target, either an int or "n", "n-1", "n+2", ..."""
    if isinstance(target, int):
        return target
    text = str(target).replace(" ", "")
    if not text.startswith("n"):
        return int(text)
    rest = text[1:]
    if not rest:
        return n
    if rest[0] in "+-" and rest[1:].isdigit():
        return n + int(rest)
    raise ValueError(f"malformed relative target: {target!r}")


_OPS = {
    "==": lambda a, b: a == b,
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
}


@dataclass(frozen=True)
class FilterClause:
    statistic: Statistic
    op: str
    target: int | str

    def __post_init__(self):
        if self.op not in _OPS:
            raise ValueError(f"unsupported comparison: {self.op!r}")

    def holds(self, p: Permutation, n: int) -> bool:
        try:
            value = eval_statistic(p, self.statistic)
        except ValueError as exc:
            raise ValueError(f"clause {self} unevaluable at n={n}: {exc}")
        return _OPS[self.op](value, resolve_target(self.target, n))

    def __str__(self) -> str:
        return f"{self.statistic}{self.op}{self.target}"


@dataclass(frozen=True)
class FilterSpec:
    clauses: tuple[FilterClause, ...]

    def __init__(self, clauses):
        object.__setattr__(self, "clauses", tuple(clauses))

    @classmethod
    def parse(cls, text: str) -> "FilterSpec":
        """Parse "lr_max_count==2" or "value_from_start:1<=n-2,..." forms."""
        clauses = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            for op in ("==", "<=", ">="):
                if op in chunk:
                    left, right = chunk.split(op, 1)
                    target = right.strip()
                    if target.lstrip("+-").isdigit():
                        target = int(target)
                    clauses.append(FilterClause(
                        Statistic.from_string(left), op, target))
                    break
            else:
                raise ValueError(f"malformed filter clause: {chunk!r}")
        return cls(clauses)

    def matches(self, p: Permutation, n: int) -> bool:
        return all(c.holds(p, n) for c in self.clauses)

    @property
    def min_length(self) -> int:
        """Smallest n at which every clause is evaluable."""
        return max((c.statistic.position or 0 for c in self.clauses),
                   default=0)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.clauses)


class _Pruner:
    """Checks whether inserting a new maximum created a forbidden pattern."""

    def __init__(self, t: PatternSet):
        # For each pattern length L, map the role r of the pattern's maximum
        # to the comparison signatures of the pattern with its maximum removed.
        self.by_len: dict[int, dict[int, frozenset]] = {}
        for q in t:
            vals = q.values
            L = len(vals)
            r = vals.index(L)
            reduced = vals[:r] + vals[r + 1:]
            roles = self.by_len.setdefault(L, {})
            sigs = roles.setdefault(r, set())
            sigs.add(_signature(reduced))
        for L, roles in self.by_len.items():
            self.by_len[L] = {r: frozenset(s) for r, s in roles.items()}

    def creates_occurrence(self, child: tuple[int, ...], pos: int) -> bool:
        left = child[:pos]
        right = child[pos + 1:]
        for L, roles in self.by_len.items():
            k = L - 1
            for r, sigs in roles.items():
                if r > len(left) or k - r > len(right):
                    continue
                if k == 0:
                    return True
                for a in combinations(left, r):
                    for b in combinations(right, k - r):
                        if _signature(a + b) in sigs:
                            return True
        return False


_LEVEL_CACHE: dict[PatternSet, list[list[tuple[int, ...]]]] = {}


def avoider_levels(t: PatternSet, n_max: int) -> list[list[tuple[int, ...]]]:
    """Lists of avoiders (as value tuples) for each length 0..n_max, cached."""
    levels = _LEVEL_CACHE.setdefault(t, [[()]])
    pruner = _Pruner(t)
    while len(levels) <= n_max:
        n = len(levels)
        nxt = []
        for p in levels[-1]:
            for pos in range(n):
                child = p[:pos] + (n,) + p[pos:]
                if not pruner.creates_occurrence(child, pos):
                    nxt.append(child)
        levels.append(nxt)
    return levels[:n_max + 1]


def subtree_counts(t: PatternSet, root: Permutation, n_max: int) -> CountTable:
    """Counts of avoiders below `root` in the generating tree (root included).

    Partitioning the tree at any level and merging with addition must
    reproduce count_avoiders; this entry point makes that checkable.
    """
    pruner = _Pruner(t)
    depth = len(root)
    counts = {depth: 1}
    level = [root.values]
    for n in range(depth + 1, n_max + 1):
        nxt = []
        for p in level:
            for pos in range(n):
                child = p[:pos] + (n,) + p[pos:]
                if not pruner.creates_occurrence(child, pos):
                    nxt.append(child)
        level = nxt
        counts[n] = len(level)
    return CountTable(counts)


def count_avoiders(t: PatternSet, n_max: int) -> CountTable:
    """counts[n] = |S_n(t)| exactly, for 0 <= n <= n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    levels = avoider_levels(t, n_max)
    return CountTable({n: len(level) for n, level in enumerate(levels)})


def count_filtered(t: PatternSet, n_max: int, f: FilterSpec,
                   n_min: int | None = None) -> CountTable:
    """counts[n] = number of avoiders of length n satisfying every clause.

    Lengths below the filter's minimum evaluable length are skipped
    (positional statistics are undefined there).
    """
    if n_min is None:
        n_min = f.min_length
    levels = avoider_levels(t, n_max)
    out = {}
    for n, level in enumerate(levels):
        if n < n_min:
            continue
        out[n] = sum(1 for vals in level if f.matches(Permutation(vals), n))
    return CountTable(out)


def count_by_statistic(t: PatternSet, n_max: int,
                       s: Statistic) -> dict[int, CountTable]:
    """Partition counts of S_n(t) by the value of s."""
    levels = avoider_levels(t, n_max)
    out: dict[int, dict[int, int]] = {}
    for n, level in enumerate(levels):
        for vals in level:
            value = eval_statistic(Permutation(vals), s)
            out.setdefault(value, {})[n] = out.get(value, {}).get(n, 0) + 1
    tables = {}
    for value, counts in sorted(out.items()):
        full = {n: counts.get(n, 0) for n in range(n_max + 1)}
        tables[value] = CountTable(full)
    return tables
