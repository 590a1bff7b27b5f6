import itertools

import numpy as np
import pytest

from inftur.graph import OrderedGraph

_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    def report(label, ok, detail=""):
        line = f"{label}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        print(line)
        _CRITERIA.append(line)
        return ok
    return report


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)


def brute_codegree(G: OrderedGraph) -> int:
    """Max common neighbours over all pairs, by set intersection."""
    nbrs = [set(G.neighbors(v).tolist()) for v in range(G.n)]
    best = 0
    for u, v in itertools.combinations(range(G.n), 2):
        best = max(best, len(nbrs[u] & nbrs[v]))
    return best


def wedge_codegree(G: OrderedGraph) -> int:
    """Max codegree by enumerating every wedge u - w - v and counting (u, v) pairs."""
    n = G.n
    keys = []
    for w in range(n):
        nb = G.neighbors(w).astype(np.int64)
        if len(nb) < 2:
            continue
        iu, iv = np.triu_indices(len(nb), 1)
        keys.append(nb[iu] * n + nb[iv])
    if not keys:
        return 0
    _, counts = np.unique(np.concatenate(keys), return_counts=True)
    return int(counts.max())


def random_graph(rng: np.random.Generator, n: int, p: float) -> OrderedGraph:
    iu, iv = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return OrderedGraph.from_edges(n, zip(iu[keep].tolist(), iv[keep].tolist()))


def small_primes(limit):
    return [p for p in range(3, limit + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]
