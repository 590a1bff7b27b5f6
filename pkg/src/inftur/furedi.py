"""The Furedi graph H_{p,t} on equivalence classes of F_p^2 minus the origin.

Classes are orbits of (a, b) under multiplication by the order-t subgroup
X = <g>; <a,b> ~ <x,y> when ax + by lies in X. Each class is represented
by the lexicographically least pair of its orbit and vertices are listed
in that order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroPair
from .graph import OrderedGraph
from .numbers import FieldElement, PrimeModulus, element_of_order

_ROW_CHUNK = 1 << 14


@dataclass(frozen=True)
class ClassRep:
    a: int
    b: int


@dataclass(eq=False)
class FurediGraph:
    """Loopy q-regular graph; ``neighbors[v]`` lists all p neighbours of v (itself if looped).

    ``g`` and ``vertices`` are ``None`` for graphs read back from a file.
    """
    p: int
    t: int
    g: int | None
    vertices: list[ClassRep] | None
    neighbors: np.ndarray  # (V, p) int32, rows sorted
    loop_flags: np.ndarray  # (V,) bool

    @property
    def n(self) -> int:
        return len(self.loop_flags)

    @property
    def loop_count(self) -> int:
        return int(self.loop_flags.sum())

    @property
    def edge_count(self) -> int:
        """Edges with each loop counted once."""
        return (self.neighbors.size + self.loop_count) // 2

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) of the adjacency matrix with 1 on looped diagonals."""
        v, d = self.neighbors.shape
        return np.arange(v + 1, dtype=np.int64) * d, self.neighbors.reshape(-1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u <= v``, loops as ``(u, u)``, sorted."""
        rows = np.repeat(np.arange(self.n), self.neighbors.shape[1])
        cols = self.neighbors.reshape(-1)
        keep = rows <= cols
        return list(zip(rows[keep].tolist(), cols[keep].tolist()))

    def simple(self) -> OrderedGraph:
        return strip_loops(self)

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        rows = np.repeat(np.arange(self.n), self.neighbors.shape[1])
        a[rows, self.neighbors.reshape(-1)] = 1.0
        return a


def canonicalize(a: FieldElement, b: FieldElement, g: FieldElement, t: int) -> ClassRep:
    """Lexicographically least pair in the orbit {(g^i a, g^i b) : 0 <= i < t}."""
    if a.value == 0 and b.value == 0:
        raise ZeroPair("(0, 0) is not a vertex")
    best = (a.value, b.value)
    x, y = a, b
    for _ in range(t - 1):
        x, y = x * g, y * g
        best = min(best, (x.value, y.value))
    return ClassRep(*best)


def class_index(p: int, t: int, g: int) -> tuple[np.ndarray, np.ndarray]:
    """Return (reps, cls): sorted representative point ids and the class of every point.

    Point (a, b) has id ``a * p + b``; ``cls[0]`` (the origin) is -1.
    """
    pts = np.arange(1, p * p, dtype=np.int64)
    a, b = np.divmod(pts, p)
    rep = pts.copy()
    for _ in range(t - 1):
        a, b = a * g % p, b * g % p
        np.minimum(rep, a * p + b, out=rep)
    reps = np.unique(rep)
    cls = np.full(p * p, -1, dtype=np.int64)
    cls[1:] = np.searchsorted(reps, rep)
    return reps, cls


def build_furedi(p: PrimeModulus | int, t: int) -> FurediGraph:
    if not isinstance(p, PrimeModulus):
        p = PrimeModulus(p)
    g = element_of_order(p, t).value
    q = p.p
    reps, cls = class_index(q, t, g)
    ra, rb = np.divmod(reps, q)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = [pow(int(v), -1, q) for v in range(1, q)]
    in_x = np.zeros(q, dtype=bool)
    in_x[[pow(g, i, q) for i in range(t)]] = True

    # Neighbours of <a,b> are the classes of the p points on ax + by = 1.
    nv = len(reps)
    nbr = np.empty((nv, q), dtype=np.int32)
    xs = np.arange(q, dtype=np.int64)
    for lo in range(0, nv, _ROW_CHUNK):
        hi = min(nv, lo + _ROW_CHUNK)
        a = ra[lo:hi, None]
        b = rb[lo:hi, None]
        y = (1 - a * xs) % q * inv[b] % q
        pts = xs * q + y
        vert = b[:, 0] == 0
        if vert.any():
            pts[vert] = inv[a[vert, 0]][:, None] * q + xs
        block = cls[pts]
        block.sort(axis=1)
        nbr[lo:hi] = block
    loops = in_x[(ra * ra + rb * rb) % q]
    verts = [ClassRep(int(x), int(y)) for x, y in zip(ra, rb)]
    return FurediGraph(q, t, g, verts, nbr, loops)


def strip_loops(G: FurediGraph) -> OrderedGraph:
    """Simple graph on the same vertex order with every loop removed."""
    v, d = G.neighbors.shape
    rows = np.repeat(np.arange(v, dtype=np.int32), d)
    cols = G.neighbors.reshape(-1)
    keep = rows != cols
    indptr = np.zeros(v + 1, dtype=np.int64)
    np.cumsum(d - G.loop_flags.astype(np.int64), out=indptr[1:])
    return OrderedGraph(v, indptr, cols[keep])


def write_graph(G: FurediGraph, path) -> None:
    """Text export: header ``p t V L`` then ``u v`` per edge (0-based, loops ``u u``)."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"{G.p} {G.t} {G.n} {G.loop_count}\n")
        fh.writelines(f"{u} {v}\n" for u, v in G.edges())


def read_graph(path) -> tuple[int, int, int, list[tuple[int, int]]]:
    """Parse the export format; returns ``(p, t, V, edges)``."""
    with open(path, encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 4:
            raise ValueError(f"{path}: header must be 'p t V L'")
        p, t, nv, nloops = map(int, header)
        edges = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            u, v = map(int, line.split())
            if not (0 <= u < nv and 0 <= v < nv):
                raise ValueError(f"{path}:{lineno}: vertex out of range")
            edges.append((min(u, v), max(u, v)))
    if sum(u == v for u, v in edges) != nloops:
        raise ValueError(f"{path}: loop count does not match header")
    return p, t, nv, edges


def loopy_from_edges(nv: int, edges: list[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """CSR adjacency (diagonal entry at loops) plus loop flags from an edge list."""
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    loops = np.zeros(nv, dtype=bool)
    loops[arr[arr[:, 0] == arr[:, 1], 0]] = True
    off = arr[arr[:, 0] != arr[:, 1]]
    rows = np.concatenate([off[:, 0], off[:, 1], np.flatnonzero(loops)])
    cols = np.concatenate([off[:, 1], off[:, 0], np.flatnonzero(loops)])
    key = np.unique(rows * nv + cols)
    r, c = np.divmod(key, nv)
    indptr = np.zeros(nv + 1, dtype=np.int64)
    np.cumsum(np.bincount(r, minlength=nv), out=indptr[1:])
    return indptr, c.astype(np.int32), loops


@dataclass(eq=False)
class LoopyGraph:
    """Adjacency read back from a graph file; same analysis surface as FurediGraph."""
    p: int
    t: int
    indptr: np.ndarray
    indices: np.ndarray
    loop_flags: np.ndarray

    @property
    def n(self) -> int:
        return len(self.loop_flags)

    @property
    def loop_count(self) -> int:
        return int(self.loop_flags.sum())

    @property
    def edge_count(self) -> int:
        return (len(self.indices) + self.loop_count) // 2

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        return self.indptr, self.indices

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        a[rows, self.indices] = 1.0
        return a

    def simple(self) -> OrderedGraph:
        rows = np.repeat(np.arange(self.n, dtype=np.int32), np.diff(self.indptr))
        keep = rows != self.indices
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.diff(self.indptr) - self.loop_flags, out=indptr[1:])
        return OrderedGraph(self.n, indptr, self.indices[keep])


def load_graph(path) -> LoopyGraph:
    p, t, nv, edges = read_graph(path)
    indptr, indices, loops = loopy_from_edges(nv, edges)
    return LoopyGraph(p, t, indptr, indices, loops)
