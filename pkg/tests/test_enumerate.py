"""Tests for the brute-force counting oracle and statistic filters."""

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.enumerate import (CountTable, FilterSpec, avoider_levels,
                                count_avoiders, count_by_statistic,
                                count_filtered, resolve_target,
                                subtree_counts)
from artifact.perm_core import (PatternSet, Permutation, Statistic, avoids,
                                symmetry_class)

T133 = PatternSet.from_string("1342,2143,2314")


class TestCountTable:
    def test_json_roundtrip(self):
        t = CountTable({0: 1, 5: 10 ** 30})
        assert CountTable.from_json(t.to_json()) == t

    def test_json_engine_tag(self):
        t = CountTable({2: 4}, engine="case222")
        back = CountTable.from_json(t.to_json())
        assert back == t and back.engine == "case222"

    def test_json_strings(self):
        assert CountTable({3: 6}).to_json() == '{"3": "6"}'

    def test_csv(self):
        assert CountTable({0: 1, 1: 1}).to_csv() == "n,count\n0,1\n1,1\n"

    def test_equality_ignores_engine(self):
        assert CountTable({1: 1}, "a") == CountTable({1: 1}, "b")


class TestResolveTarget:
    def test_int(self):
        assert resolve_target(4, 9) == 4

    def test_relative(self):
        assert resolve_target("n", 7) == 7
        assert resolve_target("n-2", 7) == 5
        assert resolve_target("n+1", 7) == 8

    def test_malformed(self):
        with pytest.raises(ValueError):
            resolve_target("nn", 5)


class TestFilterSpec:
    def test_parse_single(self):
        f = FilterSpec.parse("lr_max_count==2")
        assert str(f) == "lr_max_count==2"
        assert f.min_length == 0

    def test_parse_multi(self):
        f = FilterSpec.parse("lr_max_count==2,value_from_start:1<=n-2")
        assert len(f.clauses) == 2
        assert f.min_length == 1

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            FilterSpec.parse("lr_max_count<2")

    def test_matches(self):
        f = FilterSpec.parse("value_from_start:2==n")
        assert f.matches(Permutation.from_string("132"), 3)
        assert not f.matches(Permutation.from_string("123"), 3)


class TestOracle:
    def test_against_exhaustive_check(self):
        table = count_avoiders(T133, 6)
        for n in range(7):
            direct = sum(avoids(Permutation(vals), T133)
                         for vals in permutations(range(1, n + 1)))
            assert table[n] == direct

    def test_known_prefix(self):
        assert count_avoiders(T133, 7).as_list() == [1, 1, 2, 6, 21, 74,
                                                     255, 863]

    def test_single_pattern_catalan(self):
        t = PatternSet.from_string("123")
        assert count_avoiders(t, 6).as_list() == [1, 1, 2, 5, 14, 42, 132]

    def test_symmetry_invariance(self):
        base = count_avoiders(T133, 6)
        for s in symmetry_class(T133):
            assert count_avoiders(s, 6) == base

    def test_tree_soundness_by_deletion(self):
        for p in avoider_levels(T133, 5)[5]:
            perm = Permutation(p)
            for i in range(5):
                assert avoids(perm.delete(i), T133)

    def test_subtree_partition(self):
        total = count_avoiders(T133, 7)
        split = {n: 0 for n in range(3, 8)}
        for p in avoider_levels(T133, 3)[3]:
            sub = subtree_counts(T133, Permutation(p), 7)
            for n in range(3, 8):
                split[n] += sub[n]
        for n in range(3, 8):
            assert split[n] == total[n]

    def test_negative_n(self):
        with pytest.raises(ValueError):
            count_avoiders(T133, -1)


class TestFiltered:
    def test_exhaustive_agreement(self):
        f = FilterSpec.parse("lr_max_count==2")
        table = count_filtered(T133, 6, f)
        for n in range(7):
            direct = sum(avoids(Permutation(v), T133)
                         and f.matches(Permutation(v), n)
                         for v in permutations(range(1, n + 1)))
            assert table[n] == direct

    def test_positional_filter_skips_short_lengths(self):
        f = FilterSpec.parse("value_from_start:2==n")
        table = count_filtered(T133, 5, f)
        assert table.lengths() == [2, 3, 4, 5]

    def test_partition_by_statistic(self):
        parts = count_by_statistic(T133, 6, Statistic.lr_max_count())
        total = count_avoiders(T133, 6)
        for n in range(7):
            assert sum(t[n] for t in parts.values()) == total[n]

    def test_length_one_single_class(self):
        parts = count_by_statistic(T133, 1, Statistic.lr_max_count())
        assert parts[1][1] == 1


@given(st.permutations(list(range(1, 7))))
@settings(max_examples=100)
def test_avoider_membership_consistent(vals):
    p = Permutation(vals)
    levels = avoider_levels(T133, 6)
    assert (tuple(vals) in levels[6]) == avoids(p, T133)
