"""Finite prefixes of the layered construction and its density functionals.

A gadget on n labels is H_{p,t} (loops removed) followed by isolated
padding vertices, with p the largest suitable prime near sqrt(nt). The
layered graph places gadgets of sizes floor(c^(j-1) n) on consecutive
label blocks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, PaddingViolation
from .furedi import build_furedi
from .graph import OrderedGraph, disjoint_union
from .numbers import prime_search

DEFAULT_INTERIOR_POINTS = 64


@dataclass(frozen=True)
class LayeredSpec:
    n: int
    c: float
    t: int
    layers: int
    labeling_seed: int = 0
    labeling: str = "random"  # or "lex"

    def __post_init__(self):
        if self.n < 2 or self.t < 1 or self.layers < 1:
            raise ValueError("need n >= 2, t >= 1, layers >= 1")
        if not self.c > 1:
            raise DomainError("layer ratio c must exceed 1")
        if self.labeling not in ("random", "lex"):
            raise ValueError("labeling must be 'random' or 'lex'")

    def block_sizes(self) -> list[int]:
        # exact decimal c so that e.g. 3.58 * 100 floors to 358
        c = Fraction(repr(float(self.c)))
        return [math.floor(c ** j * self.n) for j in range(self.layers)]


def gadget_parameters(n: int, t: int) -> tuple[int, int, int]:
    """(p, Furedi block size (p^2-1)/t, padding e(n)) for an n-label gadget."""
    p = prime_search(n, t)
    v = (p * p - 1) // t
    pad = n - v
    if pad < 0 or pad > 2 * n ** (5 / 6) / math.sqrt(t):
        raise PaddingViolation(f"padding {pad} outside [0, 2 n^(5/6)/sqrt(t)] for n={n}, t={t}")
    return p, v, pad


def build_gadget(n: int, t: int, rng: np.random.Generator | int | None = 0,
                 labeling: str = "random") -> OrderedGraph:
    """H_{p,t} minus loops on labels 1..(p^2-1)/t, then isolated labels up to n.

    ``labeling="random"`` relabels the Furedi block by a uniform permutation
    drawn from ``rng``; ``"lex"`` keeps the lexicographic class order.
    """
    p, v, pad = gadget_parameters(n, t)
    H = build_furedi(p, t)
    nbr = H.neighbors
    if labeling == "random":
        rng = np.random.default_rng(rng)
        perm = rng.permutation(v).astype(np.int32)  # old vertex i -> new index perm[i]
        inv = np.empty_like(perm)
        inv[perm] = np.arange(v, dtype=np.int32)
        nbr = perm[nbr[inv]]
        nbr.sort(axis=1)
        loops = H.loop_flags[inv]
    elif labeling == "lex":
        loops = H.loop_flags
    else:
        raise ValueError("labeling must be 'random' or 'lex'")
    keep = nbr != np.arange(v, dtype=np.int32)[:, None]
    indices = nbr[keep]
    del nbr, keep
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(p - loops.astype(np.int64), out=indptr[1:v + 1])
    indptr[v + 1:] = indptr[v]
    return OrderedGraph(n, indptr, indices)


def build_layered(spec: LayeredSpec) -> OrderedGraph:
    """Disjoint union of the gadgets for every block, on consecutive labels."""
    blocks = []
    for j, size in enumerate(spec.block_sizes()):
        rng = np.random.default_rng([spec.labeling_seed, j])
        blocks.append(build_gadget(size, spec.t, rng, spec.labeling))
    if len(blocks) == 1:
        return blocks[0]
    return disjoint_union(blocks)


def prefix_edges(G: OrderedGraph, N: int) -> int:
    """e(G_N): edges with both endpoints among the first N labels."""
    if not 0 <= N <= G.n:
        raise ValueError(f"N={N} outside [0, {G.n}]")
    return int(G.prefix_edge_counts()[N])


@dataclass
class DensityCurve:
    points: list[tuple[int, int, float]]

    @property
    def min_ratio(self) -> float:
        return min(r for _, _, r in self.points)

    @property
    def argmin(self) -> int:
        return min(self.points, key=lambda pt: pt[2])[0]

    def to_csv(self) -> str:
        rows = ["N,edges,ratio"]
        rows += [f"{N},{e},{r:.12g}" for N, e, r in self.points]
        return "\n".join(rows) + "\n"


def default_sample(block_sizes: Sequence[int], interior: int = DEFAULT_INTERIOR_POINTS) -> list[int]:
    """Every block boundary plus geometrically spaced points between consecutive boundaries.

    The first block contributes only its boundary: prefixes shorter than the
    base block lie outside the range the layered bound speaks about.
    """
    ends = np.cumsum(block_sizes).tolist()
    sample = set(ends)
    for lo, hi in zip(ends, ends[1:]):
        pts = np.geomspace(lo, hi, interior + 2)[1:-1]
        sample.update(int(round(x)) for x in pts)
    return sorted(N for N in sample if 1 <= N <= ends[-1])


def density_curve(G: OrderedGraph, sample: Sequence[int]) -> DensityCurve:
    counts = G.prefix_edge_counts()
    pts = []
    for N in sample:
        if not 1 <= N <= G.n:
            raise ValueError(f"sample point {N} outside [1, {G.n}]")
        e = int(counts[N])
        pts.append((int(N), e, e / N ** 1.5))
    return DensityCurve(pts)


def f_eval(c: float, eps: float) -> float:
    """(1/(c^1.5 - 1) + eps^2) / (2 (1/(c-1) + eps)^1.5)."""
    if not c > 1:
        raise DomainError("c must exceed 1")
    if not 0 <= eps <= 1:
        raise DomainError("eps must lie in [0, 1]")
    return (1 / (c ** 1.5 - 1) + eps * eps) / (2 * (1 / (c - 1) + eps) ** 1.5)


_GOLDEN = (math.sqrt(5) - 1) / 2


def f_min(c: float, grid: int = 2001) -> tuple[float, float]:
    """(eps*, min over eps in [0, 1] of f(c, eps)) by grid search plus golden-section refinement."""
    if not c > 1:
        raise DomainError("c must exceed 1")
    eps = np.linspace(0.0, 1.0, grid)
    vals = (1 / (c ** 1.5 - 1) + eps ** 2) / (2 * (1 / (c - 1) + eps) ** 1.5)
    i = int(np.argmin(vals))
    lo, hi = eps[max(i - 1, 0)], eps[min(i + 1, grid - 1)]
    a, b = lo + (1 - _GOLDEN) * (hi - lo), lo + _GOLDEN * (hi - lo)
    fa, fb = f_eval(c, a), f_eval(c, b)
    while hi - lo > 1e-13:
        if fa <= fb:
            hi, b, fb = b, a, fa
            a = lo + (1 - _GOLDEN) * (hi - lo)
            fa = f_eval(c, a)
        else:
            lo, a, fa = a, b, fb
            b = lo + _GOLDEN * (hi - lo)
            fb = f_eval(c, b)
    cands = [(f_eval(c, x), x) for x in (lo, hi, 0.5 * (lo + hi), 0.0, 1.0)]
    val, x = min(cands)
    return float(x), float(val)


def best_ratio(cs: Sequence[float]) -> tuple[float, float]:
    """(c, f_min(c)) maximising the minimum density over the given ratios."""
    vals = [(f_min(c)[1], c) for c in cs]
    v, c = max(vals)
    return c, v


def asymptotic_ratio_bound(n: float, t: int, c: float, j: int, eps: float) -> float:
    """Lower bound on e(G_N)/N^1.5 at N = n (c^j - 1)/(c - 1) + eps c^j n."""
    if not c > 1 or j < 1 or not 0 <= eps < 1 or n < 1:
        raise DomainError("need c > 1, j >= 1, 0 <= eps < 1, n >= 1")
    return ratio_main_term(t, c, j, eps) - ratio_error_term(n, t, c, j)


def ratio_main_term(t: int, c: float, j: int, eps: float) -> float:
    head = (1 - c ** (-1.5 * j)) / (c ** 1.5 - 1) + eps * eps
    return math.sqrt(t) / 2 * head / ((1 - c ** -j) / (c - 1) + eps) ** 1.5


def ratio_error_term(n: float, t: int, c: float, j: int) -> float:
    return 7 * c ** (4 / 3) * t ** 1.25 / (n ** (1 / 6) * c ** (j / 6) * ((1 - c ** -j) / (c - 1)) ** 1.5)


def gadget_prefix_bound(n: int, t: int, eps: float) -> float:
    """eps^2 sqrt(t) n^1.5 / 2 - 7 t^1.25 n^(4/3)."""
    if not 0 < eps <= 1:
        raise DomainError("eps must lie in (0, 1]")
    return eps * eps / 2 * math.sqrt(t) * n ** 1.5 - 7 * t ** 1.25 * n ** (4 / 3)


def gadget_prefix_audit(G: OrderedGraph, t: int, eps: float) -> tuple[int, float]:
    """(observed prefix edges at floor(eps n), bound); passes when observed >= bound."""
    N = math.floor(eps * G.n)
    return prefix_edges(G, N), gadget_prefix_bound(G.n, t, eps)


def layer_position(block_sizes: Sequence[int], N: int) -> tuple[int, float] | None:
    """(j, eps) with N = n_1 + ... + n_j + eps n_{j+1}; None inside the first block."""
    ends = np.cumsum(block_sizes)
    j = int(np.searchsorted(ends, N, side="right"))
    if j == 0:
        return None
    if j >= len(block_sizes):
        return j, 0.0
    return j, (N - int(ends[j - 1])) / block_sizes[j]
