"""Surviving-pair machinery: pruning, sparsity checks, the subset cap."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triwalk import (
    Graph,
    PairSet,
    cover_is_sparsifying,
    erdos_renyi,
    sample_cover,
    sparsity_budget_holds,
    subset_pair_cap,
    uncovered_pairs,
    uncovered_pairs_at,
)
from triwalk.pairs import all_pairs, cover_draw_count


def uncovered_by_double_loop(g, cover, within):
    """Independent oracle: explicit pair/cover loops."""
    out = set()
    within = sorted(int(v) for v in within)
    for u, v in itertools.combinations(within, 2):
        pruned = any(g.has_edge(x, u) and g.has_edge(x, v) for x in cover)
        if not pruned:
            out.add((u, v))
    return out


def small_graph(seed, n, p):
    return erdos_renyi(n, p, seed)


class TestCoverSampling:
    def test_draw_counts(self):
        # ceil(3 * 16 * ln 256) = ceil(266.17) = 267
        assert cover_draw_count(256, 0.5) == 267
        for k in (0.1, 0.5, 0.9):
            assert cover_draw_count(2, k) == math.ceil(3 * 2**k * math.log(2))

    def test_set_size_capped_by_draws(self):
        cover = sample_cover(256, 0.5, seed=1)
        assert 0 < cover.size <= 267
        assert np.all(np.diff(cover) > 0)

    def test_deterministic(self):
        assert np.array_equal(sample_cover(64, 0.5, seed=3), sample_cover(64, 0.5, seed=3))

    def test_needs_two_vertices(self):
        with pytest.raises(ValueError):
            sample_cover(1, 0.5, seed=0)


class TestPairSet:
    def test_canonical_enumeration(self):
        ps = all_pairs([3, 1, 7])
        assert list(ps.pairs()) == [(1, 3), (1, 7), (3, 7)]
        assert ps.universe_size == 3 and len(ps) == 3

    def test_membership_and_slots(self):
        ps = all_pairs(range(5))
        assert (2, 4) in ps and (4, 2) in ps
        with pytest.raises(ValueError):
            (2, 2) in ps
        with pytest.raises(KeyError):
            (2, 9) in ps

    def test_mask_constructor_validates(self):
        with pytest.raises(ValueError):
            PairSet(np.array([2, 1]), np.zeros(1, dtype=bool))
        with pytest.raises(ValueError):
            PairSet(np.array([1, 2, 3]), np.zeros(5, dtype=bool))

    def test_singleton_universe_is_empty(self):
        ps = all_pairs([4])
        assert ps.universe_size == 0 and len(ps) == 0


class TestUncoveredPairs:
    def test_empty_cover_keeps_everything(self):
        g = small_graph(0, 12, 0.5)
        surv = uncovered_pairs(g, [], range(12))
        assert len(surv) == surv.universe_size == 66

    def test_single_vertex_subset(self):
        g = small_graph(0, 8, 0.5)
        assert len(uncovered_pairs(g, [0], [3])) == 0

    def test_path_hand_case(self):
        # a-b-c with cover {b}: the pair {a,c} is pruned, edges survive.
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        surv = uncovered_pairs(g, [1], [0, 1, 2])
        assert set(surv.pairs()) == {(0, 1), (1, 2)}

    def test_apex_restriction_hand_cases(self):
        g = erdos_renyi(4, 1.0, seed=0)  # K4
        at = uncovered_pairs_at(g, [], [0, 1, 2], 3)
        assert len(at) == 3
        lonely = Graph.from_edges(5, [(0, 1)])
        assert len(uncovered_pairs_at(lonely, [], [0, 1, 2], 4)) == 0

    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(0, 10_000),
        n=st.integers(4, 24),
        p=st.sampled_from([0.2, 0.5, 0.8]),
        data=st.data(),
    )
    def test_matches_double_loop(self, seed, n, p, data):
        g = small_graph(seed, n, p)
        cover = data.draw(st.sets(st.integers(0, n - 1), max_size=6))
        within = data.draw(st.sets(st.integers(0, n - 1), min_size=2, max_size=10))
        surv = uncovered_pairs(g, sorted(cover), sorted(within))
        assert set(surv.pairs()) == uncovered_by_double_loop(g, cover, within)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 1000), apex=st.integers(0, 15))
    def test_nesting_invariants(self, seed, apex):
        g = small_graph(seed, 16, 0.5)
        within = range(2, 14)
        base = all_pairs(within)
        surv = uncovered_pairs(g, [0, 1], within)
        at = uncovered_pairs_at(g, [0, 1], within, apex)
        assert at.issubset(surv)
        assert surv.issubset(base)

    def test_monotone_in_cover(self):
        g = small_graph(5, 20, 0.6)
        small = uncovered_pairs(g, [0, 1], range(20))
        large = uncovered_pairs(g, [0, 1, 2, 3, 4], range(20))
        assert large.issubset(small)


class TestSparsityChecks:
    def test_edgeless_always_sparsifying(self):
        g = erdos_renyi(32, 0.0, seed=0)
        assert cover_is_sparsifying(g, [], 0.5)

    def test_full_cover_sparsifies(self):
        # Any pair with a common neighbor is pruned by that very neighbor.
        g = small_graph(7, 32, 0.7)
        assert cover_is_sparsifying(g, range(32), 0.5)

    def test_star_leaf_pairs(self):
        # Star: leaf pairs share exactly one neighbor (the hub).
        g = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
        assert cover_is_sparsifying(g, [], k=0.5)  # n^(1-k) = sqrt(6) >= 1

    def test_dense_graph_with_empty_cover_fails(self):
        g = erdos_renyi(64, 1.0, seed=0)
        assert not cover_is_sparsifying(g, [], 0.5)

    def test_budget_trivial_subsets(self):
        g = small_graph(3, 16, 0.5)
        assert sparsity_budget_holds(g, [], [], 0.5)
        assert sparsity_budget_holds(g, [], [7], 0.5)

    def test_budget_full_cover(self):
        g = small_graph(4, 24, 0.6)
        for seed in range(5):
            rng = np.random.default_rng(seed)
            subset = rng.choice(24, size=10, replace=False)
            assert sparsity_budget_holds(g, range(24), subset, 0.5)

    def test_budget_on_random_subsets(self):
        # Sampled covers keep the summed budget for almost all subsets.
        g = erdos_renyi(128, 0.5, seed=11)
        cover = sample_cover(128, 0.5, seed=12)
        rng = np.random.default_rng(13)
        good = sum(
            sparsity_budget_holds(g, cover, rng.choice(128, size=40, replace=False), 0.5)
            for _ in range(100)
        )
        assert good >= 99

    def test_budget_matches_definition_on_small_graph(self):
        # Direct check of the summed form against per-apex restriction sizes.
        g = small_graph(9, 14, 0.5)
        cover = [0, 3]
        subset = list(range(1, 11))
        lhs = sum(
            len(uncovered_pairs_at(g, cover, subset, w)) for w in range(g.n)
        )
        holds = lhs <= len(subset) ** 2 * g.n ** 0.5
        assert sparsity_budget_holds(g, cover, subset, 0.5) == holds


class TestSubsetPairCap:
    def test_worked_example(self):
        assert subset_pair_cap(4, 6, 9) == pytest.approx(68.0)

    def test_zero_count_floor(self):
        for r in (5, 9, 30):
            assert subset_pair_cap(r, 40, 0) == pytest.approx(16.0 * r)

    def test_full_subset_simplifies(self):
        # r = |A|: coefficient collapses to 8/3.
        for x in (0.0, 7.0, 123.0):
            assert subset_pair_cap(12, 12, x) == pytest.approx(8.0 * x / 3.0 + 16 * 12)

    def test_vectorized(self):
        xs = np.array([0.0, 9.0, 18.0])
        caps = subset_pair_cap(4, 6, xs)
        assert caps == pytest.approx([64.0, 68.0, 72.0])

    def test_contract(self):
        with pytest.raises(ValueError):
            subset_pair_cap(3, 10, 1.0)
        with pytest.raises(ValueError):
            subset_pair_cap(11, 10, 1.0)
        with pytest.raises(ValueError):
            subset_pair_cap(4, 3, 1.0)
