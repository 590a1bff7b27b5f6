"""Simple graphs on labels 1..n stored as compressed sparse rows.

Vertex ``i`` (0-based array index) carries label ``i + 1``; prefixes
``G_N`` are the first ``N`` indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np


@dataclass(eq=False)
class OrderedGraph:
    n: int
    indptr: np.ndarray  # int64, length n + 1
    indices: np.ndarray  # int32, rows sorted ascending
    _prefix: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.indptr = np.ascontiguousarray(self.indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(self.indices, dtype=np.int32)
        if self.indptr.shape != (self.n + 1,):
            raise ValueError("indptr must have length n + 1")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> OrderedGraph:
        """Build from 0-based vertex pairs; duplicates are merged, loops rejected."""
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if len(arr) and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("edge endpoint out of range")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise ValueError("OrderedGraph is simple: loops are not allowed")
        both = np.concatenate([arr, arr[:, ::-1]])
        return cls.from_directed_pairs(n, both[:, 0], both[:, 1])

    @classmethod
    def from_directed_pairs(cls, n: int, rows: np.ndarray, cols: np.ndarray) -> OrderedGraph:
        """Build from a symmetric list of (row, col) entries."""
        key = np.unique(rows.astype(np.int64) * n + cols.astype(np.int64))
        r, c = np.divmod(key, n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(r, minlength=n), out=indptr[1:])
        return cls(n, indptr, c.astype(np.int32))

    @classmethod
    def empty(cls, n: int) -> OrderedGraph:
        return cls(n, np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int32))

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if v > u:
                    yield u, int(v)

    def prefix_edge_counts(self) -> np.ndarray:
        """Array ``P`` with ``P[N]`` = number of edges inside the first N vertices."""
        if self._prefix is None:
            rows = np.repeat(np.arange(self.n, dtype=np.int32), np.diff(self.indptr))
            lower = rows[self.indices < rows]
            out = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(np.bincount(lower, minlength=self.n), out=out[1:])
            self._prefix = out
        return self._prefix

    def induced_edge_count(self, mask: np.ndarray) -> int:
        rows = np.repeat(mask, np.diff(self.indptr))
        return int(np.count_nonzero(rows & mask[self.indices])) // 2

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        a[rows, self.indices] = 1.0
        return a


def cycle_graph(n: int) -> OrderedGraph:
    return OrderedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(s: int, r: int) -> OrderedGraph:
    return OrderedGraph.from_edges(s + r, [(i, s + j) for i in range(s) for j in range(r)])


def disjoint_union(graphs: list[OrderedGraph]) -> OrderedGraph:
    """Place graphs on consecutive label blocks with no edges between blocks."""
    n = sum(g.n for g in graphs)
    indptr = [np.zeros(1, dtype=np.int64)]
    indices = []
    off_v = off_e = 0
    for g in graphs:
        indptr.append(g.indptr[1:] + off_e)
        indices.append(g.indices + np.int32(off_v))
        off_v += g.n
        off_e += len(g.indices)
    return OrderedGraph(n, np.concatenate(indptr), np.concatenate(indices) if indices else np.zeros(0, np.int32))
