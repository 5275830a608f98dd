"""Recurrence-system engines that recount several avoidance classes.

Each engine rebuilds its counting sequence from a first-letters (or
first-two-letters) recurrence system, a succession-rule forest, or a
functional equation, independently of both the brute-force tree and the
closed-form catalog.  Cell recurrences are dispatched so that every
index pair is produced by exactly one rule; a cell claimed by zero or
two rules raises CoverageError when the table is built.

Base cases at small lengths are seeded from the brute-force tree, which
keeps the engines honest: a wrong rule shows up as a mismatch at the
first length the rules take over.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .enumerate import CountTable, avoider_levels
from .perm_core import PatternSet
from .series import Series

T_131 = PatternSet.from_string("2134,1423,2341")
T_164 = PatternSet.from_string("1432,2431,3214")
T_194 = PatternSet.from_string("3124,4123,1243")
T_199 = PatternSet.from_string("1243,1423,2341")
T_222 = PatternSet.from_string("3412,3421,1342")
T_232 = PatternSet.from_string("1234,1342,2341")
T_242 = PatternSet.from_string("2341,2431,3241")

SEED_N = 4


class CoverageError(ValueError):
    """An index was produced by zero or by more than one recurrence rule."""


class _Cells:
    """First-two-letter table for one length, with single-assignment cells."""

    def __init__(self, n: int):
        self.n = n
        self.cells: dict[tuple[int, int], int] = {}

    def put(self, i: int, j: int, value: int) -> None:
        if not (1 <= i <= self.n and 1 <= j <= self.n and i != j):
            raise CoverageError(f"cell ({i},{j}) out of range at n={self.n}")
        if (i, j) in self.cells:
            raise CoverageError(f"cell ({i},{j}) assigned twice at n={self.n}")
        if value < 0:
            raise CoverageError(f"negative count at ({i},{j}), n={self.n}")
        self.cells[(i, j)] = value

    def get(self, i: int, j: int) -> int:
        return self.cells.get((i, j), 0)

    def finish(self) -> None:
        expected = self.n * (self.n - 1)
        if len(self.cells) != expected:
            missing = [(i, j) for i in range(1, self.n + 1)
                       for j in range(1, self.n + 1)
                       if i != j and (i, j) not in self.cells]
            raise CoverageError(
                f"{len(missing)} uncovered cells at n={self.n}: {missing[:5]}")

    def row(self, i: int) -> int:
        return sum(v for (a, _), v in self.cells.items() if a == i)

    def total(self) -> int:
        return sum(self.cells.values())


def _seed_cells(t: PatternSet, n: int) -> _Cells:
    cells = _Cells(n)
    counts: dict[tuple[int, int], int] = {}
    for p in avoider_levels(t, n)[n]:
        counts[(p[0], p[1])] = counts.get((p[0], p[1]), 0) + 1
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                cells.put(i, j, counts.get((i, j), 0))
    return cells


def _seed_totals(t: PatternSet, n_max: int) -> dict[int, int]:
    return {n: len(level)
            for n, level in enumerate(avoider_levels(t, n_max))}


def _finish_table(counts: dict[int, int], n_max: int, name: str) -> CountTable:
    return CountTable({n: counts[n] for n in range(n_max + 1)}, name)


def case131_counts(n_max: int) -> CountTable:
    """First-letter aggregates with side tables b, b' and l_i = 2^i - i.

    Tracks, for each first letter i, the number of avoiders whose second
    letter is smaller (ap) or larger (app) than i, plus the columns
    j = n-1 (b) and j = n (bp).  Row 1 totals come from a known rational
    series for the class obtained by deleting the first letter.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    totals = _seed_totals(T_131, min(n_max, SEED_N))
    if n_max <= SEED_N:
        return _finish_table(totals, n_max, "case131")
    # Row-1 totals: coefficients of (1-3x+4x^2-x^3+x^4)/(1-x)^4, where the
    # coefficient of x^(n-1) counts the avoiders of length n starting with 1.
    num = Series([1, -3, 4, -1, 1], n_max + 1)
    den = Series([1, -4, 6, -4, 1], n_max + 1)
    row1 = (num / den).integer_coefficients()
    ell = [2 ** i - i for i in range(n_max + 2)]

    seed = _seed_cells(T_131, SEED_N)
    n0 = SEED_N
    ap = [0] * (n0 + 1)
    app = [0] * (n0 + 1)
    b = [0] * (n0 + 1)
    bp = [0] * (n0 + 1)
    for i in range(1, n0 + 1):
        ap[i] = sum(seed.get(i, j) for j in range(1, i))
        app[i] = sum(seed.get(i, j) for j in range(i + 1, n0 + 1))
        b[i] = seed.get(i, n0 - 1)
        bp[i] = seed.get(i, n0)

    for n in range(SEED_N + 1, n_max + 1):
        nap = [0] * (n + 1)
        napp = [0] * (n + 1)
        nb = [0] * (n + 1)
        nbp = [0] * (n + 1)
        for i in range(2, n - 1):
            nap[i] = sum(ap[k] for k in range(1, i + 1))
        nap[n - 1] = totals[n - 1] - totals[n - 2]
        nap[n] = totals[n - 1]
        for i in range(1, n - 1):
            nb[i] = b[i] + ell[i - 1]
            nbp[i] = bp[i] + ap[i]
        nbp[n - 1] = totals[n - 2]
        napp[1] = row1[n - 1]
        for i in range(2, n - 1):
            napp[i] = app[i] + nb[i] + nbp[i] - bp[i]
        napp[n - 1] = totals[n - 2]
        if any(v < 0 for v in nap + napp + nb + nbp):
            raise CoverageError(f"negative aggregate at n={n}")
        totals[n] = sum(nap[i] + napp[i] for i in range(1, n + 1))
        ap, app, b, bp = nap, napp, nb, nbp
    return _finish_table(totals, n_max, "case131")


def case164_counts(n_max: int) -> CountTable:
    """Full first-two-letter table driven by a binomial column and copies."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    totals = _seed_totals(T_164, min(n_max, SEED_N))
    if n_max <= SEED_N:
        return _finish_table(totals, n_max, "case164")
    prev = _seed_cells(T_164, SEED_N)
    prev_rows = {i: prev.row(i) for i in range(1, SEED_N + 1)}
    for n in range(SEED_N + 1, n_max + 1):
        cur = _Cells(n)
        # Row 1 first: explicit ballot-like binomial, exact division.
        for j in range(2, n + 1):
            numerator = (j - 1) * comb(2 * n - 2 - j, n - 2)
            if numerator % (n - 1):
                raise CoverageError(f"non-integer binomial cell (1,{j}) n={n}")
            cur.put(1, j, numerator // (n - 1))
        # Ascending rows above the diagonal; (i,i+2) reads row i-1 of this
        # level, so the i order matters.
        for i in range(2, n):
            cur.put(i, i + 1, prev_rows[i])
            if i + 2 <= n:
                cur.put(i, i + 2, cur.get(i - 1, i + 2))
            for j in range(i + 3, n + 1):
                cur.put(i, j, sum(prev.get(i, k) for k in range(j - 1, n)))
        # Below the diagonal.
        for i in range(2, n):
            cur.put(i, 1, cur.get(1, i) + 2 ** (i - 2) + 1 - i)
        for i in range(3, n - 1):
            for j in range(2, i):
                cur.put(i, j, prev.get(i, j))
        for j in range(2, n - 2):
            cur.put(n - 1, j, prev.get(n - 2, j) + 2 ** (n - 3 - j))
        if n >= 4:
            cur.put(n - 1, n - 2, totals[n - 3])
        for j in range(1, n):
            cur.put(n, j, prev_rows[j])
        cur.finish()
        totals[n] = cur.total()
        prev = cur
        prev_rows = {i: cur.row(i) for i in range(1, n + 1)}
    return _finish_table(totals, n_max, "case164")


def case194_counts(n_max: int) -> CountTable:
    """First-two-letter table with a prefix-summed superdiagonal."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    totals = _seed_totals(T_194, min(n_max, SEED_N))
    if n_max <= SEED_N:
        return _finish_table(totals, n_max, "case194")
    prev = _seed_cells(T_194, SEED_N)
    prev_rows = {i: prev.row(i) for i in range(1, SEED_N + 1)}
    for n in range(SEED_N + 1, n_max + 1):
        cur = _Cells(n)
        # Below the diagonal: prefix sums of the previous row i-1.
        for i in range(2, n + 1):
            cur.put(i, i - 1, prev_rows[i - 1])
            for j in range(1, i - 1):
                cur.put(i, j, sum(prev.get(i - 1, k) for k in range(1, j + 1)))
        # Superdiagonal b(n;i) = a(n;i,i+1), then the rest of row i which
        # consumes b(n;i-1) from this level.
        for i in range(1, n):
            cur.put(i, i + 1, sum(prev.get(k, k + 1) for k in range(1, i + 1)))
        for i in range(1, n - 1):
            for j in range(i + 2, n):
                cur.put(i, j, prev.get(i, j) + prev.get(i, j - 1)
                        + cur.get(i - 1, i))
            cur.put(i, n, cur.get(i, n - 1))
        cur.finish()
        totals[n] = cur.total()
        prev = cur
        prev_rows = {i: cur.row(i) for i in range(1, n + 1)}
    return _finish_table(totals, n_max, "case194")


def w_triangle(m_max: int) -> list[list[int]]:
    """Rows of w with w[m][j] = w[m-1][j] + w[m-1][j-1] + 1, w[0] = [1]."""
    rows = [[1]]
    for m in range(1, m_max + 1):
        prev = rows[-1]
        row = []
        for j in range(m + 1):
            a = prev[j] if j < len(prev) else 0
            b = prev[j - 1] if 1 <= j <= len(prev) else 0
            row.append(a + b + 1)
        rows.append(row)
    return rows


def case199_counts(n_max: int) -> CountTable:
    """First-two-letter table anchored at the top rows, descending with w."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    totals = _seed_totals(T_199, min(n_max, SEED_N))
    if n_max <= SEED_N:
        return _finish_table(totals, n_max, "case199")
    prev = _seed_cells(T_199, SEED_N)
    prev_rows = {i: prev.row(i) for i in range(1, SEED_N + 1)}
    w = w_triangle(n_max)
    for n in range(SEED_N + 1, n_max + 1):
        cur = _Cells(n)
        # Rows n and n-1 read previous-level row totals.
        for j in range(1, n):
            cur.put(n, j, prev_rows[j])
        for j in range(1, n - 1):
            cur.put(n - 1, j, prev_rows[j])
        cur.put(n - 1, n, totals[n - 2])
        # Diagonals and the copied block above the diagonal.
        for i in range(1, n - 1):
            cur.put(i, i + 1, totals[i - 1])
        for i in range(2, n - 1):
            cur.put(i, i - 1, prev_rows[i - 1])
        for i in range(1, n - 3):
            for j in range(i + 2, n - 1):
                cur.put(i, j, prev.get(i, j))
        # Columns n-1 and n via the b / b' side recurrences.
        for i in range(1, n - 2):
            cur.put(i, n - 1, prev.get(i, n - 1) + comb(n - 3, i))
        for i in range(1, n - 2):
            cur.put(i, n, sum(prev.get(j, n - 1) for j in range(1, i + 1)))
        cur.put(n - 2, n, totals[n - 2])
        # Remaining lower cells descend from row n-1 by the w triangle.
        for i in range(n - 2, 2, -1):
            for j in range(1, i - 1):
                value = cur.get(i + 1, j) - w[i - 3][j - 1]
                cur.put(i, j, value)
        cur.finish()
        totals[n] = cur.total()
        prev = cur
        prev_rows = {i: cur.row(i) for i in range(1, n + 1)}
    return _finish_table(totals, n_max, "case199")


def ballot_triangle(n_max: int) -> list[list[int]]:
    """c[n][i] = 123-avoiders of length n starting with i (1-based i).

    Built by prefix sums: c(n;i) = sum_{j<=min(i,n-1)} c(n-1;j).
    """
    rows: list[list[int]] = [[1]]
    for n in range(2, n_max + 1):
        prev = rows[-1]
        row = []
        acc = 0
        for i in range(1, n + 1):
            if i <= n - 1:
                acc += prev[i - 1]
            row.append(acc)
        rows.append(row)
    return [[]] + rows


def case232_counts(n_max: int) -> CountTable:
    """First-letter recurrence against the 123-avoider ballot triangle."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    totals = _seed_totals(T_232, min(n_max, SEED_N))
    if n_max <= SEED_N:
        return _finish_table(totals, n_max, "case232")
    c = ballot_triangle(n_max)
    seed = avoider_levels(T_232, SEED_N)[SEED_N]
    rows = [0] * (SEED_N + 1)
    for p in seed:
        rows[p[0]] += 1
    for n in range(SEED_N + 1, n_max + 1):
        new = [0] * (n + 1)
        for i in range(1, n - 1):
            new[i] = (sum(rows[j] for j in range(1, i + 1))
                      + sum(c[j - 1][i - 1] for j in range(i + 1, n)))
        new[n - 1] = totals[n - 1]
        new[n] = totals[n - 1]
        if any(v < 0 for v in new):
            raise CoverageError(f"negative row count at n={n}")
        totals[n] = sum(new)
        rows = new
    return _finish_table(totals, n_max, "case232")


PLAIN, BAR, DBAR = "plain", "bar", "doublebar"


class LabelVector:
    """Counts of generating-forest labels (family, k) at one level."""

    __slots__ = ("level", "counts")

    def __init__(self, level: int, counts: dict[tuple[str, int], int]):
        self.level = level
        self.counts = dict(counts)

    def total(self) -> int:
        return sum(self.counts.values())

    def by_family(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for (family, _), cnt in self.counts.items():
            out[family] = out.get(family, 0) + cnt
        return out

    def __repr__(self) -> str:
        return f"LabelVector(level={self.level}, total={self.total()})"


def _forest_step(counts: dict[tuple[str, int], int]) -> dict:
    nxt: dict[tuple[str, int], int] = {}

    def add(label, cnt):
        nxt[label] = nxt.get(label, 0) + cnt

    for (family, k), cnt in counts.items():
        if family == PLAIN:
            for k2 in range(3, k + 2):
                add((PLAIN, k2), cnt)
            add((BAR, k + 1), cnt)
        elif family == BAR:
            add((BAR, 3), cnt)
            for k2 in range(3, k + 1):
                add((DBAR, k2), cnt)
            add((BAR, k + 1), cnt)
        else:
            for k2 in range(2, k + 1):
                add((DBAR, k2), cnt)
            add((BAR, k + 1), cnt)
    return nxt


def case222_forest(n_max: int) -> list[LabelVector]:
    """Label dynamics of the succession-rule forest, levels 2..n_max.

    Roots at level 2 are one plain 3 and one bar 3; every node labelled
    k (in any family) has exactly k children, so level totals obey the
    conservation law sum(k * count) at level n = total at level n+1.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    counts = {(PLAIN, 3): 1, (BAR, 3): 1}
    out = [LabelVector(2, counts)]
    for level in range(3, n_max + 1):
        counts = _forest_step(counts)
        out.append(LabelVector(level, counts))
    return out


def case222_counts(n_max: int) -> CountTable:
    """Level totals of the forest, padded with the trivial lengths 0, 1."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    table = {0: 1, 1: 1}
    for vec in case222_forest(max(n_max, 2)):
        if vec.level <= n_max:
            table[vec.level] = vec.total()
    return _finish_table(table, n_max, "case222")


def case242_fixed_point(order: int) -> Series:
    """Unique series solution of F = 1 + xF/(1 - xF^2) with F[0] = 1."""
    if order < 1:
        raise ValueError("order must be >= 1")
    x = Series.x(order)
    f = Series.one(order)
    for _ in range(order):
        nxt = 1 + x * f / (1 - x * f * f)
        if nxt == f:
            break
        f = nxt
    else:
        raise ValueError("fixed point did not stabilize")
    return f


def case242_sum(n: int) -> int:
    """Closed binomial sum for the same sequence, evaluated exactly."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    acc = Fraction(0)
    for i in range(1, n + 1):
        acc += Fraction(comb(n - 1, i - 1) * comb(2 * n - i, i - 1), i)
    if acc.denominator != 1:
        raise ValueError(f"non-integer count at n={n}: {acc}")
    return acc.numerator


def case242_counts(n_max: int) -> CountTable:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return CountTable({n: case242_sum(n) for n in range(n_max + 1)},
                      "case242")


def case118_J_recurrence(order: int, m_max: int) -> Series:
    """Stabilized sum of the series-valued J_m recurrence.

    J_0 = 1 and J_1 = x * F where F counts {123, 3412}-avoiders; for
    m >= 2 the recurrence (1-x) J_m = (2x - x^2) J_{m-1} - x^2 J_{m-2}
    + x^(m+2)/((1-x)^(m-1)(1-2x)) + x^(m+3)/((1-x)^2 (1-2x)) holds.
    Returns sum of J_m over 2 <= m <= m_max; terms beyond order - 2
    vanish to the truncation order, so the sum stabilizes.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    one_minus_x = Series([1, -1], order)
    one_minus_2x = Series([1, -2], order)
    f_pair = 1 + (Series([0, 1, -4, 7, -5, 2], order)
                  / (one_minus_x ** 4 * one_minus_2x))
    j_prev = Series.one(order)          # J_0
    j_cur = Series.x(order) * f_pair    # J_1
    acc = Series.zero(order)
    for m in range(2, m_max + 1):
        rhs = (Series([0, 2, -1], order) * j_cur
               - Series([0, 0, 1], order) * j_prev
               + Series.monomial(m + 2, order)
               / (one_minus_x ** (m - 1) * one_minus_2x)
               + Series.monomial(m + 3, order)
               / (one_minus_x ** 2 * one_minus_2x))
        j_next = rhs / one_minus_x
        acc = acc + j_next
        j_prev, j_cur = j_cur, j_next
    return acc
