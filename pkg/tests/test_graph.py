"""Graph storage, generators, ground-truth search, and the query ledger."""

import itertools
import math

import numpy as np
import pytest

from triwalk import (
    Graph,
    QueryLedger,
    Triangle,
    brute_force_triangle,
    erdos_renyi,
    is_triangle,
    planted_instance,
    planted_triple,
    random_bipartite,
    read_edge_list,
    read_packed,
    write_edge_list,
    write_packed,
)


def triangles_by_enumeration(g):
    """Independent oracle: all triangles via a plain triple scan."""
    found = []
    for a, b, c in itertools.combinations(range(g.n), 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            found.append(Triangle(a, b, c))
    return found


class TestQueryOracle:
    def test_cycle_edge(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        ledger = QueryLedger()
        assert g.query(ledger, 0, 1) is True
        assert ledger.raw_probes == 1

    def test_edgeless_pairs(self):
        g = erdos_renyi(5, 0.0, seed=7)
        ledger = QueryLedger()
        for u, v in itertools.combinations(range(5), 2):
            assert g.query(ledger, u, v) is False
        assert ledger.raw_probes == 10

    def test_path_endpoints_not_adjacent(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        ledger = QueryLedger()
        assert g.query(ledger, 0, 2) is False
        assert g.query(ledger, 0, 1) is True

    def test_contract_violations(self):
        g = erdos_renyi(4, 0.5, seed=0)
        ledger = QueryLedger()
        with pytest.raises(ValueError):
            g.query(ledger, 2, 2)
        with pytest.raises(ValueError):
            g.query(ledger, 0, 4)
        with pytest.raises(ValueError):
            g.query(ledger, -1, 2)

    def test_symmetric_and_repeatable(self):
        g = erdos_renyi(20, 0.4, seed=3)
        ledger = QueryLedger()
        for u, v in itertools.combinations(range(10), 2):
            first = g.query(ledger, u, v)
            probes = ledger.raw_probes
            assert g.query(ledger, v, u) == first
            assert g.query(ledger, u, v) == first
            assert ledger.raw_probes == probes + 2

    def test_adjacency_invariants(self):
        g = erdos_renyi(30, 0.5, seed=1)
        dense = g.bool_matrix
        assert not np.any(np.diag(dense))
        assert np.array_equal(dense, dense.T)
        for u in range(5):
            assert set(g.neighbors(u)) == {v for v in range(g.n) if dense[u, v]}

    def test_rejects_bad_matrices(self):
        with pytest.raises(ValueError):
            Graph(np.array([[True]]))  # self loop
        asym = np.zeros((3, 3), dtype=bool)
        asym[0, 1] = True
        with pytest.raises(ValueError):
            Graph(asym)


class TestGenerators:
    def test_er_extremes(self):
        assert erdos_renyi(5, 0.0, seed=7).edge_count == 0
        assert erdos_renyi(5, 1.0, seed=7).edge_count == 10

    def test_er_edge_count_concentrates(self):
        g = erdos_renyi(100, 0.5, seed=1)
        mean = 0.5 * math.comb(100, 2)
        sigma = math.sqrt(math.comb(100, 2) * 0.25)
        assert abs(g.edge_count - mean) <= 5 * sigma

    def test_er_deterministic(self):
        assert erdos_renyi(40, 0.3, seed=9) == erdos_renyi(40, 0.3, seed=9)
        assert erdos_renyi(40, 0.3, seed=9) != erdos_renyi(40, 0.3, seed=10)

    def test_bipartite_triangle_free(self):
        for seed in range(10):
            g = random_bipartite(64, seed)
            assert brute_force_triangle(g) is None

    def test_bipartite_tiny(self):
        g = random_bipartite(2, seed=0)
        assert g.edge_count <= 1

    def test_bipartite_edge_count_concentrates(self):
        # 32 x 32 cross pairs at p = 1/2
        g = random_bipartite(64, seed=5)
        sigma = math.sqrt(1024 * 0.25)
        assert abs(g.edge_count - 512) <= 5 * sigma

    def test_planted_minimal(self):
        g = planted_instance(3, seed=4)
        assert g.edge_count == 3
        assert brute_force_triangle(g) == Triangle(0, 1, 2)

    def test_planted_always_has_triangle(self):
        for seed in range(10):
            g = planted_instance(64, seed)
            assert brute_force_triangle(g) is not None
            assert is_triangle(g, planted_triple(64, seed))

    def test_planted_triples_vary_with_seed(self):
        triples = {planted_triple(64, seed) for seed in range(8)}
        assert len(triples) > 1

    def test_planted_found_exactly_when_unique(self):
        # When the bipartite base contributes no extra triangle, ground truth
        # must recover the planted triple itself. At n=16 the base usually
        # closes extra triangles around the plant, so pin seeds where it
        # does not, and check the plant is enumerated everywhere else.
        for seed in (21, 35):
            g = planted_instance(16, seed)
            assert triangles_by_enumeration(g) == [planted_triple(16, seed)]
            assert brute_force_triangle(g) == planted_triple(16, seed)
        for seed in range(10):
            g = planted_instance(16, seed)
            assert planted_triple(16, seed) in triangles_by_enumeration(g)


class TestBruteForce:
    def test_complete_graph(self):
        assert brute_force_triangle(erdos_renyi(4, 1.0, seed=0)) == Triangle(0, 1, 2)

    def test_edgeless(self):
        assert brute_force_triangle(erdos_renyi(10, 0.0, seed=0)) is None

    def test_lexicographic_across_edges(self):
        # Triangles (2,3,9) and (0,8,9): the smallest sorted triple starts
        # with 0 even though its first edge appears later in degree order.
        g = Graph.from_edges(
            10, [(2, 3), (2, 9), (3, 9), (0, 8), (0, 9), (8, 9)]
        )
        assert brute_force_triangle(g) == Triangle(0, 8, 9)

    def test_matches_enumeration(self):
        for seed in range(12):
            g = erdos_renyi(18, 0.25, seed=seed)
            expected = min(triangles_by_enumeration(g), default=None)
            assert brute_force_triangle(g) == expected

    def test_reported_triangle_verifies(self):
        for seed in range(6):
            g = erdos_renyi(40, 0.3, seed=seed)
            tri = brute_force_triangle(g)
            if tri is not None:
                assert is_triangle(g, tri)


class TestLedger:
    def test_totals_are_phase_sums(self):
        ledger = QueryLedger()
        ledger.charge("a", 1.5)
        ledger.charge("b", 2.25)
        ledger.charge("a", 0.25)
        assert ledger.total == pytest.approx(4.0)
        assert ledger.charged == {"a": 1.75, "b": 2.25}

    def test_entries_only_increase(self):
        ledger = QueryLedger()
        ledger.charge("x", 1.0)
        with pytest.raises(ValueError):
            ledger.charge("x", -0.5)
        with pytest.raises(ValueError):
            ledger.add_raw(-1)

    def test_snapshot_sorted(self):
        ledger = QueryLedger()
        ledger.charge("z", 1.0)
        ledger.charge("a", 2.0)
        assert list(ledger.snapshot()) == ["a", "z"]


class TestSerialization:
    def test_edge_list_roundtrip(self, tmp_path):
        g = erdos_renyi(50, 0.3, seed=2)
        path = tmp_path / "g.txt"
        write_edge_list(g, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "n 50"
        assert len(lines) == 1 + g.edge_count
        assert read_edge_list(path) == g

    def test_packed_roundtrip(self, tmp_path):
        g = erdos_renyi(130, 0.5, seed=3)
        path = tmp_path / "g.bin"
        write_packed(g, path)
        assert read_packed(path) == g

    def test_packed_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.bin"
        path.write_bytes(b"nope")
        with pytest.raises(ValueError):
            read_packed(path)
