"""Tests for the recurrence, forest, and functional-equation engines."""

import pytest

from artifact.enumerate import count_avoiders
from artifact.recurrences import (CoverageError, LabelVector, T_131, T_164,
                                  T_194, T_199, T_222, T_232, T_242,
                                  ballot_triangle, case118_J_recurrence,
                                  case131_counts, case164_counts,
                                  case194_counts, case199_counts,
                                  case222_counts, case222_forest,
                                  case232_counts, case242_counts,
                                  case242_fixed_point, case242_sum,
                                  w_triangle)
from artifact.series import Series

ENGINES = [
    (case131_counts, T_131),
    (case164_counts, T_164),
    (case194_counts, T_194),
    (case199_counts, T_199),
    (case222_counts, T_222),
    (case232_counts, T_232),
    (case242_counts, T_242),
]


@pytest.mark.parametrize("engine,patterns", ENGINES,
                         ids=[t[0].__name__ for t in ENGINES])
def test_engine_matches_oracle(engine, patterns):
    oracle = count_avoiders(patterns, 9)
    table = engine(9)
    assert table == oracle
    assert table.engine is not None


@pytest.mark.parametrize("engine,patterns", ENGINES,
                         ids=[t[0].__name__ for t in ENGINES])
def test_engine_small_n(engine, patterns):
    table = engine(4)
    assert table.as_list() == [1, 1, 2, 6, 21]


def test_engines_run_past_oracle_depth():
    # Table engines are recurrences; lengths past the seeded range must
    # still be produced (values checked against the catalog elsewhere).
    for engine, _ in ENGINES:
        table = engine(12)
        assert all(table[n] > 0 for n in range(13))


class TestForest222:
    def test_roots(self):
        vec = case222_forest(2)[0]
        assert vec.counts == {("plain", 3): 1, ("bar", 3): 1}

    def test_level_three_labels(self):
        vec = case222_forest(3)[1]
        # children of the two roots: {bar 3, dbar 3, bar 4} from one and
        # {plain 3, plain 4, bar 4} from the other
        assert vec.counts == {("bar", 3): 1, ("doublebar", 3): 1,
                              ("bar", 4): 2, ("plain", 3): 1,
                              ("plain", 4): 1}

    def test_totals_match_oracle(self):
        oracle = count_avoiders(T_222, 10)
        for vec in case222_forest(10):
            assert vec.total() == oracle[vec.level]

    def test_conservation_law(self):
        levels = case222_forest(11)
        for cur, nxt in zip(levels, levels[1:]):
            children = sum(k * cnt for (_, k), cnt in cur.counts.items())
            assert children == nxt.total()

    def test_by_family(self):
        vec = case222_forest(5)[-1]
        fam = vec.by_family()
        assert sum(fam.values()) == vec.total()
        assert set(fam) == {"plain", "bar", "doublebar"}

    def test_requires_level_two(self):
        with pytest.raises(ValueError):
            case222_forest(1)

    def test_repr(self):
        assert "level=2" in repr(LabelVector(2, {("plain", 3): 1}))


class TestCase242:
    def test_fixed_point_prefix(self):
        f = case242_fixed_point(6)
        assert f.integer_coefficients() == [1, 1, 2, 6, 21, 80]

    def test_fixed_point_residual(self):
        f = case242_fixed_point(16)
        x = Series.x(16)
        assert f == 1 + x * f / (1 - x * f * f)

    def test_sum_small(self):
        assert case242_sum(1) == 1
        assert case242_sum(4) == 21
        assert case242_sum(5) == 80

    def test_sum_agrees_with_fixed_point(self):
        f = case242_fixed_point(14)
        assert [case242_sum(n) for n in range(14)] \
            == f.integer_coefficients()

    def test_sum_integrality_to_30(self):
        for n in range(31):
            assert isinstance(case242_sum(n), int)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            case242_sum(-1)
        with pytest.raises(ValueError):
            case242_fixed_point(0)


class TestTriangles:
    def test_ballot_rows_sum_to_catalan(self):
        rows = ballot_triangle(8)
        catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
        for n in range(1, 9):
            assert sum(rows[n]) == catalan[n]

    def test_ballot_top_entries(self):
        rows = ballot_triangle(5)
        assert rows[4] == [1, 3, 5, 5]
        assert rows[5] == [1, 4, 9, 14, 14]

    def test_w_row_sums(self):
        # Row sums of w expand 1/((1-x)^2 (1-2x)): 1, 4, 11, 26, 57, ...
        expansion = (Series.one(8)
                     / (Series([1, -1], 8) ** 2 * Series([1, -2], 8)))
        rows = w_triangle(7)
        assert [sum(r) for r in rows] == expansion.integer_coefficients()


class TestCase118:
    def test_matches_closed_form_to_order_20(self):
        order = 21
        num = Series([0, 0, 1, -7, 22, -35, 29, -13], order)
        den = Series([1, -1], order) ** 4 * Series([1, -2], order) ** 3
        assert case118_J_recurrence(order, 25) == num / den

    def test_partial_sums_stabilize(self):
        order = 12
        final = case118_J_recurrence(order, 30)
        assert case118_J_recurrence(order, 14) == final

    def test_coefficient_at_x2(self):
        assert case118_J_recurrence(10, 12)[2] == 1

    def test_rejects_small_m_max(self):
        with pytest.raises(ValueError):
            case118_J_recurrence(10, 1)


def test_coverage_error_is_value_error():
    assert issubclass(CoverageError, ValueError)


def test_negative_n_rejected():
    for engine, _ in ENGINES:
        with pytest.raises(ValueError):
            engine(-1)
