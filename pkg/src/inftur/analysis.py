"""Certificates for the properties the lower-bound argument relies on.

* K_{2,t+1}-freeness via the maximum codegree,
* the partition of H_{q,t} into q + 1 classes with codegrees 0 (inside) and t (across),
* the adjacency spectrum being {q} plus values in {+-sqrt(q), +-1},
* the expander-mixing inequality on vertex subsets.

Functions that take a Furedi graph accept anything with ``p``, ``t``, ``n``,
``loop_flags`` and ``csr()``, so graphs reloaded from disk work too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import PartitionViolation, SpectrumViolation
from .graph import OrderedGraph

SPECTRAL_SIZE_CAP = 4000
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
_BLOCK_CELLS = 1 << 22


def codegree_witness(G: OrderedGraph) -> tuple[int, int, int]:
    """(max codegree, u, v) over unordered pairs u < v."""
    best, u, v = _kernels.max_codegree(G.indptr, G.indices, G.n)
    return int(best), int(u), int(v)


def max_codegree(G: OrderedGraph) -> int:
    return codegree_witness(G)[0]


def is_k2_free(G: OrderedGraph, t: int) -> bool:
    """True iff G has no K_{2,t+1}, i.e. every pair shares at most t neighbours."""
    if t < 1:
        raise ValueError("t must be at least 1")
    return max_codegree(G) <= t


@dataclass
class CodegreeReport:
    classes: list[np.ndarray]
    within_class_codegree: int
    cross_class_codegree: int

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def _codegree_rows(G):
    indptr, indices = G.csr()
    n = G.n
    step = max(1, _BLOCK_CELLS // max(n, 1))
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        yield lo, _kernels.codegree_block(indptr, indices, n, lo, hi)


def codegree_partition(G, t: int | None = None) -> CodegreeReport:
    """Group vertices by zero codegree and certify the {0, t} block structure.

    Common neighbours are counted in the loopy graph, so a looped vertex is
    its own neighbour. Raises :class:`PartitionViolation` on any deviation.
    """
    q, t = G.p, G.t if t is None else t
    n = G.n
    if t < 1 or (q - 1) % t:
        raise PartitionViolation(f"t={t} does not divide q-1={q - 1}")
    size = (q - 1) // t
    label = np.full(n, -1, dtype=np.int64)
    classes: list[np.ndarray] = []
    for lo, block in _codegree_rows(G):
        for r in range(block.shape[0]):
            u = lo + r
            row = block[r].copy()
            row[u] = 0
            bad = np.flatnonzero((row != 0) & (row != t))
            if len(bad):
                v = int(bad[0])
                raise PartitionViolation(f"codegree({u}, {v}) = {row[v]}, expected 0 or {t}")
            members = np.flatnonzero(row == 0)
            if len(members) != size:
                raise PartitionViolation(f"vertex {u} has {len(members) - 1} zero-codegree partners, expected {size - 1}")
            if label[u] < 0:
                if np.any(label[members] >= 0):
                    raise PartitionViolation(f"zero-codegree relation is not transitive at vertex {u}")
                label[members] = len(classes)
                classes.append(members)
            elif not np.array_equal(members, classes[label[u]]):
                raise PartitionViolation(f"vertex {u} disagrees with its class")
    if len(classes) != q + 1:
        raise PartitionViolation(f"found {len(classes)} classes, expected {q + 1}")
    return CodegreeReport(classes, 0, t)


def adjacency_eigenvalues(G) -> np.ndarray:
    """All adjacency eigenvalues (diagonal 1 at loops), sorted descending."""
    if G.n > SPECTRAL_SIZE_CAP:
        raise ValueError(f"{G.n} vertices exceeds the spectral size cap {SPECTRAL_SIZE_CAP}")
    a = np.ascontiguousarray(G.to_dense())
    diag, _, _ = _kernels.jacobi_eigenvalues(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    return np.sort(diag)[::-1]


@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray
    nearest: np.ndarray  # allowed value closest to each eigenvalue
    distance: np.ndarray
    multiplicities: dict[str, int] = field(default_factory=dict)

    @property
    def max_distance(self) -> float:
        return float(self.distance.max()) if len(self.distance) else 0.0


def spectrum(G, tol: float = 1e-6) -> SpectrumReport:
    """Eigenvalues of a Furedi graph classified against {q, +-sqrt(q), +-1}.

    Raises :class:`SpectrumViolation` unless every eigenvalue is within
    ``tol`` of the set and exactly one is within ``tol`` of q.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = G.p
    ev = adjacency_eigenvalues(G)
    rq = math.sqrt(q)
    targets = np.array([q, rq, -rq, 1.0, -1.0])
    names = ["q", "sqrt(q)", "-sqrt(q)", "1", "-1"]
    gaps = np.abs(ev[:, None] - targets[None, :])
    pick = np.argmin(gaps, axis=1)
    dist = gaps[np.arange(len(ev)), pick]
    mult = {name: int(np.sum((pick == i) & (dist <= tol))) for i, name in enumerate(names)}
    report = SpectrumReport(ev, targets[pick], dist, mult)
    if np.any(dist > tol):
        i = int(np.argmax(dist))
        raise SpectrumViolation(f"eigenvalue {ev[i]:.12g} is {dist[i]:.3g} from the allowed set")
    if mult["q"] != 1:
        raise SpectrumViolation(f"eigenvalue q={q} has multiplicity {mult['q']}, expected 1")
    return report


@dataclass
class MixingResult:
    observed: float
    bound: float
    edges: int

    @property
    def passed(self) -> bool:
        return self.observed <= self.bound


def subset_edge_count(G, subset) -> int:
    """Edges inside ``subset``, a loop counting once."""
    mask = _as_mask(G.n, subset)
    indptr, indices = G.csr()
    rows = np.repeat(mask, np.diff(indptr))
    entries = int(np.count_nonzero(rows & mask[indices]))
    loops = int(np.count_nonzero(G.loop_flags & mask))
    return (entries + loops) // 2


def _as_mask(n, subset) -> np.ndarray:
    arr = np.asarray(subset)
    if arr.dtype == bool:
        if arr.shape != (n,):
            raise ValueError("mask length must equal the vertex count")
        return arr
    mask = np.zeros(n, dtype=bool)
    mask[arr.astype(np.int64)] = True
    return mask


def mixing_audit(G, subset) -> MixingResult:
    """Compare |e(B) - b^2 d n / 2| with lambda b n / 2 for d = q, lambda = sqrt(q)."""
    n, d = G.n, G.p
    mask = _as_mask(n, subset)
    b = mask.sum() / n
    e = subset_edge_count(G, mask)
    observed = abs(e - 0.5 * b * b * d * n)
    bound = 0.5 * math.sqrt(d) * b * n
    return MixingResult(float(observed), float(bound), e)


def prefix_edge_lower_bound(q: int, t: int, eps: float) -> float:
    """Lower bound q(q^2-1)eps^2/(2t) - 1.5 q^2.5 eps on loop-free edges of an eps-fraction subset."""
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    return q * (q * q - 1) / (2 * t) * eps * eps - 1.5 * q ** 2.5 * eps
