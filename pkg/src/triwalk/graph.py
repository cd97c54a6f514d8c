"""Graph storage, instance generators, and the query-counted edge oracle.

Adjacency is held in packed 64-bit rows so neighborhood intersections,
common-neighbor counts and lexicographic scans run word-parallel. Graphs
are immutable after construction and safe for concurrent readers; all
randomness flows through explicit integer seeds.

Classical probes of the adjacency relation go through ``Graph.query`` and
are tallied as ``raw_probes`` on a :class:`QueryLedger`. Charged quantum
costs (the emulated query budget) are accumulated on the same ledger by
the cost-model layer, under per-phase labels.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

__all__ = [
    "Graph",
    "QueryLedger",
    "Triangle",
    "brute_force_triangle",
    "erdos_renyi",
    "random_bipartite",
    "planted_instance",
    "planted_triple",
    "is_triangle",
    "read_edge_list",
    "write_edge_list",
    "read_packed",
    "write_packed",
]

# Seed-stream tags so generators drawing from the same user seed stay
# independent of each other.
_TAG_ER = 0x45
_TAG_BIPARTITE = 0x42
_TAG_PLANT = 0x50

_PACKED_MAGIC = b"TWGB"


class Triangle(NamedTuple):
    """Three mutually adjacent vertices, stored in ascending order."""

    v1: int
    v2: int
    v3: int


@dataclass
class QueryLedger:
    """Per-phase accumulator of charged cost plus raw classical probes.

    ``charged`` maps a phase label to a nonnegative real: the emulated
    quantum query budget attributed to that phase. ``raw_probes`` counts
    actual classical adjacency reads, kept separate for diagnostics.
    Entries only ever increase.
    """

    charged: dict[str, float] = field(default_factory=dict)
    raw_probes: int = 0

    def charge(self, phase: str, amount: float) -> None:
        if amount < 0:
            raise ValueError(f"negative charge {amount!r} for phase {phase!r}")
        self.charged[phase] = self.charged.get(phase, 0.0) + float(amount)

    def add_raw(self, count: int = 1) -> None:
        if count < 0:
            raise ValueError("raw probe count cannot decrease")
        self.raw_probes += int(count)

    @property
    def total(self) -> float:
        return sum(self.charged.values())

    def snapshot(self) -> dict[str, float]:
        return dict(sorted(self.charged.items()))


def _pack_bool_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a (rows, bits) boolean matrix into (rows, ceil(bits/64)) words."""
    rows, bits = dense.shape
    words = (bits + 63) // 64
    packed_bytes = np.packbits(dense, axis=1, bitorder="little")
    padded = np.zeros((rows, words * 8), dtype=np.uint8)
    padded[:, : packed_bytes.shape[1]] = packed_bytes
    return padded.view("<u8")


def _first_bit(row_words: np.ndarray) -> Optional[int]:
    """Index of the lowest set bit in a packed row, or None if empty."""
    for wi in range(row_words.shape[0]):
        word = int(row_words[wi])
        if word:
            return wi * 64 + (word & -word).bit_length() - 1
    return None


class Graph:
    """Undirected unweighted graph over vertices 0..n-1.

    The adjacency relation is symmetric with no self loops; both are
    enforced at construction. Use :meth:`query` for oracle-style access
    that tallies raw probes on a ledger, and the ``_rows`` bitset view for
    emulation-side bulk scans.
    """

    __slots__ = ("n", "_rows", "_bool", "_edges", "_gt")

    def __init__(self, dense: np.ndarray):
        dense = np.asarray(dense, dtype=bool)
        if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if dense.shape[0] < 1:
            raise ValueError("graph needs at least one vertex")
        if np.any(np.diag(dense)):
            raise ValueError("self loops are not representable")
        if not np.array_equal(dense, dense.T):
            raise ValueError("adjacency must be symmetric")
        self.n: int = int(dense.shape[0])
        self._rows: np.ndarray = _pack_bool_rows(dense)
        self._bool: Optional[np.ndarray] = None
        self._edges: Optional[tuple[np.ndarray, np.ndarray]] = None
        self._gt: Optional[np.ndarray] = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        dense = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError("self loops are not representable")
            dense[u, v] = True
            dense[v, u] = True
        return cls(dense)

    # -- core access ---------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool((int(self._rows[u, v >> 6]) >> (v & 63)) & 1)

    def query(self, ledger: QueryLedger, u: int, v: int) -> bool:
        """Oracle access to the pair {u, v}; counts one raw probe."""
        if u == v:
            raise ValueError("oracle pairs need distinct endpoints")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"vertex out of range for n={self.n}")
        ledger.add_raw(1)
        return self.has_edge(u, v)

    @property
    def bool_matrix(self) -> np.ndarray:
        """Dense boolean adjacency, cached; used for bulk fancy indexing."""
        if self._bool is None:
            unpacked = np.unpackbits(
                self._rows.view(np.uint8), axis=1, bitorder="little"
            )
            self._bool = unpacked[:, : self.n].astype(bool)
            self._bool.setflags(write=False)
        return self._bool

    def bool_row(self, u: int) -> np.ndarray:
        return self.bool_matrix[u]

    def neighbors(self, u: int) -> np.ndarray:
        return np.nonzero(self.bool_row(u))[0]

    def degree(self, u: int) -> int:
        return int(np.bitwise_count(self._rows[u]).sum())

    @property
    def edge_count(self) -> int:
        return int(np.bitwise_count(self._rows).sum()) // 2

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Canonically ordered edge endpoints (u < v, lexicographic)."""
        if self._edges is None:
            eu, ev = np.nonzero(np.triu(self.bool_matrix, 1))
            self._edges = (eu.astype(np.int64), ev.astype(np.int64))
        return self._edges

    def common_count(self, u: int, v: int) -> int:
        """Number of vertices adjacent to both u and v."""
        return int(np.bitwise_count(self._rows[u] & self._rows[v]).sum())

    def pack_set(self, vertices) -> np.ndarray:
        """Bitmask of a vertex subset in the row word layout."""
        bits = np.zeros((1, self.n), dtype=bool)
        verts = np.asarray(vertices, dtype=np.int64)
        if verts.size:
            bits[0, verts] = True
        return _pack_bool_rows(bits)[0]

    @property
    def _gt_rows(self) -> np.ndarray:
        """Row v = bitmask of vertices strictly greater than v (cached)."""
        if self._gt is None:
            idx = np.arange(self.n)
            self._gt = _pack_bool_rows(idx[None, :] > idx[:, None])
        return self._gt

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self._rows, other._rows)
        )

    __hash__ = None  # mutable caches; identity comparisons are never wanted

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def is_triangle(g: Graph, tri: Triangle) -> bool:
    a, b, c = tri
    if len({a, b, c}) != 3:
        return False
    return g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)


def brute_force_triangle(g: Graph) -> Optional[Triangle]:
    """Exhaustive ground-truth search; lexicographically smallest triangle.

    Scans edges in canonical order and completes each with its smallest
    common neighbor above the edge, which yields the minimum sorted triple.
    Classical reference oracle: nothing is charged to any ledger.
    """
    eu, ev = g.edges()
    chunk = 1 << 16
    for start in range(0, eu.shape[0], chunk):
        u = eu[start : start + chunk]
        v = ev[start : start + chunk]
        common = g._rows[u] & g._rows[v] & g._gt_rows[v]
        hit = common.any(axis=1)
        if hit.any():
            i = int(np.argmax(hit))
            w = _first_bit(common[i])
            return Triangle(int(u[i]), int(v[i]), int(w))
    return None


# -- generators ---------------------------------------------------------


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): each unordered pair is an edge independently with prob p."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.default_rng([seed, _TAG_ER])
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph(upper | upper.T)


def _bipartite_dense(n: int, seed: int) -> np.ndarray:
    left = (n + 1) // 2
    rng = np.random.default_rng([seed, _TAG_BIPARTITE])
    cross = rng.random((left, n - left)) < 0.5
    dense = np.zeros((n, n), dtype=bool)
    dense[:left, left:] = cross
    dense[left:, :left] = cross.T
    return dense


def random_bipartite(n: int, seed: int) -> Graph:
    """Random balanced bipartite graph, cross edges with prob 1/2.

    Triangle-free by construction: any cycle alternates sides, so it has
    even length.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    return Graph(_bipartite_dense(n, seed))


def planted_triple(n: int, seed: int) -> Triangle:
    """The triangle that planted_instance(n, seed) inserts."""
    rng = np.random.default_rng([seed, _TAG_PLANT])
    verts = np.sort(rng.choice(n, size=3, replace=False))
    return Triangle(int(verts[0]), int(verts[1]), int(verts[2]))


def planted_instance(n: int, seed: int) -> Graph:
    """Triangle-free bipartite base plus one planted triangle.

    The base equals random_bipartite(n, seed), so positives and negatives
    with the same seed differ only by the three planted edges.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    dense = _bipartite_dense(n, seed)
    a, b, c = planted_triple(n, seed)
    for x, y in ((a, b), (a, c), (b, c)):
        dense[x, y] = True
        dense[y, x] = True
    return Graph(dense)


# -- serialization ------------------------------------------------------


def write_edge_list(g: Graph, path) -> None:
    """Text form: header line "n <count>", then one "u v" line per edge."""
    eu, ev = g.edges()
    with open(path, "w") as fh:
        fh.write(f"n {g.n}\n")
        for u, v in zip(eu.tolist(), ev.tolist()):
            fh.write(f"{u} {v}\n")


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2 or header[0] != "n":
            raise ValueError("expected header line 'n <count>'")
        n = int(header[1])
        dense = np.zeros((n, n), dtype=bool)
        for line in fh:
            if not line.strip():
                continue
            u, v = map(int, line.split())
            dense[u, v] = True
            dense[v, u] = True
    return Graph(dense)


def write_packed(g: Graph, path) -> None:
    """Compact binary form: magic, n, then row-major packed bit rows."""
    payload = np.packbits(g.bool_matrix, axis=1, bitorder="little")
    with open(path, "wb") as fh:
        fh.write(_PACKED_MAGIC)
        fh.write(struct.pack("<Q", g.n))
        fh.write(payload.tobytes())


def read_packed(path) -> Graph:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _PACKED_MAGIC:
            raise ValueError("not a packed graph file")
        (n,) = struct.unpack("<Q", fh.read(8))
        row_bytes = (n + 7) // 8
        raw = np.frombuffer(fh.read(n * row_bytes), dtype=np.uint8)
    bits = np.unpackbits(raw.reshape(n, row_bytes), axis=1, bitorder="little")
    return Graph(bits[:, :n].astype(bool))
