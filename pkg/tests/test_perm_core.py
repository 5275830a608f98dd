"""Tests for permutations, containment, symmetries, and statistics."""

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.perm_core import (PatternSet, Permutation, Statistic,
                                StatisticKind, avoids, contains,
                                eval_statistic, lr_maxima_values,
                                standardize, symmetry_class)

perms = st.integers(min_value=0, max_value=7).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))).map(Permutation)
nonempty_perms = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))).map(Permutation)


class TestPermutation:
    def test_parse_digits(self):
        assert Permutation.from_string("1342").values == (1, 3, 4, 2)

    def test_parse_commas(self):
        p = Permutation.from_string("10,2,1,3,4,5,6,7,8,9")
        assert len(p) == 10 and p[0] == 10

    def test_parse_empty(self):
        assert len(Permutation.from_string("")) == 0

    def test_str_roundtrip_long(self):
        p = Permutation(range(1, 12))
        assert Permutation.from_string(str(p)) == p

    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            Permutation((1, 3))
        with pytest.raises(ValueError):
            Permutation((1, 1, 2))

    def test_immutable(self):
        p = Permutation((1, 2))
        with pytest.raises(AttributeError):
            p.values = (2, 1)

    @given(perms)
    @settings(max_examples=100)
    def test_reverse_involution(self, p):
        assert p.reverse().reverse() == p

    @given(perms)
    @settings(max_examples=100)
    def test_complement_involution(self, p):
        assert p.complement().complement() == p

    @given(perms)
    @settings(max_examples=100)
    def test_inverse_involution(self, p):
        assert p.inverse().inverse() == p

    @given(nonempty_perms, st.data())
    @settings(max_examples=100)
    def test_delete_standardizes(self, p, data):
        i = data.draw(st.integers(min_value=0, max_value=len(p) - 1))
        q = p.delete(i)
        assert len(q) == len(p) - 1

    def test_standardize(self):
        assert standardize((30, 10, 20)) == (3, 1, 2)


class TestContainment:
    def test_basic(self):
        p = Permutation.from_string("53142")
        assert contains(p, Permutation.from_string("312"))
        assert not contains(p, Permutation.from_string("1234"))

    def test_empty_pattern(self):
        assert contains(Permutation(()), Permutation(()))

    @given(perms, perms)
    @settings(max_examples=100)
    def test_symmetry_equivariance(self, p, q):
        assert contains(p, q) == contains(p.reverse(), q.reverse())
        assert contains(p, q) == contains(p.complement(), q.complement())
        assert contains(p, q) == contains(p.inverse(), q.inverse())

    def test_avoids(self):
        t = PatternSet.from_string("1342,2143,2314")
        assert avoids(Permutation.from_string("321"), t)
        assert not avoids(Permutation.from_string("2143"), t)


class TestPatternSet:
    def test_canonical_order(self):
        a = PatternSet.from_string("3412,1243")
        b = PatternSet.from_string("1243,3412")
        assert a == b and str(a) == "1243,3412"

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            PatternSet([])

    def test_orbit_size_divides_eight(self):
        for text in ("1342", "1342,2143,2314", "1234", "12"):
            size = len(symmetry_class(PatternSet.from_string(text)))
            assert 8 % size == 0

    def test_orbit_closed(self):
        t = PatternSet.from_string("1342,2143,2314")
        orbit = symmetry_class(t)
        for s in orbit:
            assert symmetry_class(s) == orbit


class TestStatistics:
    def test_lr_maxima(self):
        assert lr_maxima_values((3, 1, 4, 2, 5)) == [3, 4, 5]

    def test_lr_max_count(self):
        p = Permutation.from_string("31425")
        assert eval_statistic(p, Statistic.lr_max_count()) == 3
        assert eval_statistic(p, Statistic.rl_max_count()) == 1

    def test_positional(self):
        p = Permutation.from_string("31425")
        assert eval_statistic(p, Statistic.value_at_from_start(2)) == 1
        assert eval_statistic(p, Statistic.value_at_from_end(1)) == 5

    def test_positional_out_of_range(self):
        with pytest.raises(ValueError):
            eval_statistic(Permutation.from_string("12"),
                           Statistic.value_at_from_start(3))

    def test_top_interval(self):
        yes = Permutation.from_string("3142")  # maxima 3, 4 = top interval
        no = Permutation.from_string("2413")   # maxima 2, 4
        s = Statistic.lr_max_top_interval()
        assert eval_statistic(yes, s) == 1
        assert eval_statistic(no, s) == 0

    def test_last_is_max(self):
        s = Statistic.last_is_max()
        assert eval_statistic(Permutation.from_string("213"), s) == 1
        assert eval_statistic(Permutation.from_string("231"), s) == 0

    def test_from_string(self):
        s = Statistic.from_string("value_from_start:2")
        assert s.kind is StatisticKind.VALUE_AT_FROM_START
        assert s.position == 2
        assert str(s) == "value_from_start:2"

    def test_position_validation(self):
        with pytest.raises(ValueError):
            Statistic(StatisticKind.VALUE_AT_FROM_START)
        with pytest.raises(ValueError):
            Statistic(StatisticKind.LR_MAX_COUNT, 2)

    @given(nonempty_perms)
    @settings(max_examples=100)
    def test_lr_rl_duality(self, p):
        assert (eval_statistic(p, Statistic.rl_max_count())
                == eval_statistic(p.reverse(), Statistic.lr_max_count()))


def test_contains_matches_exhaustive_definition():
    from itertools import combinations
    q = Permutation.from_string("132")
    for n in range(6):
        for vals in permutations(range(1, n + 1)):
            naive = any(standardize(sub) == q.values
                        for sub in combinations(vals, 3))
            assert contains(Permutation(vals), q) == naive
