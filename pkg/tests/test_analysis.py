import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_codegree, random_graph, wedge_codegree
from inftur import analysis
from inftur.errors import PartitionViolation, SpectrumViolation
from inftur.furedi import LoopyGraph, build_furedi, loopy_from_edges, strip_loops
from inftur.graph import OrderedGraph, complete_bipartite, cycle_graph


def test_max_codegree_examples():
    assert analysis.max_codegree(strip_loops(build_furedi(3, 1))) == 1
    assert analysis.max_codegree(cycle_graph(4)) == 2
    assert analysis.max_codegree(OrderedGraph.empty(5)) == 0


def test_is_k2_free_examples():
    assert analysis.is_k2_free(strip_loops(build_furedi(3, 1)), 1)
    assert not analysis.is_k2_free(cycle_graph(4), 1)
    assert analysis.is_k2_free(strip_loops(build_furedi(5, 2)), 2)


def test_codegree_witness_is_a_real_pair():
    G = complete_bipartite(3, 5)
    best, u, v = analysis.codegree_witness(G)
    assert best == 5
    assert len(set(G.neighbors(u)) & set(G.neighbors(v))) == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.floats(0.05, 0.9), st.integers(0, 2**32 - 1))
def test_max_codegree_matches_oracles(n, dens, seed):
    G = random_graph(np.random.default_rng(seed), n, dens)
    got = analysis.max_codegree(G)
    assert got == brute_codegree(G) == wedge_codegree(G)


@pytest.mark.parametrize("p,t,nclasses,size", [(3, 1, 4, 2), (5, 1, 6, 4), (5, 2, 6, 2), (13, 4, 14, 3)])
def test_codegree_partition_examples(p, t, nclasses, size):
    rep = analysis.codegree_partition(build_furedi(p, t), t)
    assert len(rep.classes) == nclasses
    assert rep.class_sizes == [size] * nclasses
    assert rep.within_class_codegree == 0 and rep.cross_class_codegree == t


def perturbed(p, t):
    """Furedi graph with one non-loop adjacency toggled, as a LoopyGraph."""
    G = build_furedi(p, t)
    edges = set(G.edges())
    u, v = 0, int(next(x for x in range(1, G.n) if (0, x) not in edges))
    edges.add((u, v))
    indptr, indices, loops = loopy_from_edges(G.n, sorted(edges))
    return LoopyGraph(p, t, indptr, indices, loops)


def test_codegree_partition_rejects_perturbed():
    with pytest.raises(PartitionViolation):
        analysis.codegree_partition(perturbed(5, 1), 1)


def test_codegree_partition_against_dense_square():
    G = build_furedi(7, 2)
    A = G.to_dense().astype(np.int64)
    A2 = A @ A
    rep = analysis.codegree_partition(G, 2)
    label = np.empty(G.n, dtype=int)
    for i, cls in enumerate(rep.classes):
        label[list(cls)] = i
    off = ~np.eye(G.n, dtype=bool)
    same = label[:, None] == label[None, :]
    assert (A2[off & same] == 0).all()
    assert (A2[~same] == 2).all()


def test_spectrum_example_h31():
    rep = analysis.spectrum(build_furedi(3, 1))
    assert rep.eigenvalues[0] == pytest.approx(3, abs=1e-9)
    assert rep.multiplicities["q"] == 1
    assert rep.max_distance <= 1e-6


def test_eigenvalues_trivial_graphs():
    K2 = OrderedGraph.from_edges(2, [(0, 1)])
    assert analysis.adjacency_eigenvalues(K2) == pytest.approx([1, -1], abs=1e-12)
    assert analysis.adjacency_eigenvalues(OrderedGraph.empty(4)) == pytest.approx([0] * 4)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 40), st.floats(0.1, 0.9), st.integers(0, 2**32 - 1))
def test_eigenvalues_match_lapack(n, dens, seed):
    G = random_graph(np.random.default_rng(seed), n, dens)
    ref = np.sort(np.linalg.eigvalsh(G.to_dense().astype(float)))[::-1]
    assert analysis.adjacency_eigenvalues(G) == pytest.approx(ref, abs=1e-9)


def test_spectrum_rejects_perturbed():
    with pytest.raises(SpectrumViolation):
        analysis.spectrum(perturbed(5, 1))


def test_mixing_examples():
    G = build_furedi(3, 1)
    empty = analysis.mixing_audit(G, [])
    assert (empty.observed, empty.bound) == (0, 0) and empty.passed
    full = analysis.mixing_audit(G, range(8))
    assert full.edges == 14
    assert full.observed == pytest.approx(2.0)
    assert full.bound == pytest.approx(0.5 * math.sqrt(3) * 8)
    assert full.passed


def test_mixing_random_subsets_h13():
    G = build_furedi(13, 1)
    rng = np.random.default_rng(0)
    dense = G.to_dense()
    for _ in range(50):
        mask = rng.random(G.n) < rng.random()
        sub = dense[np.ix_(mask, mask)]
        direct = (sub.sum() + np.trace(sub)) // 2
        res = analysis.mixing_audit(G, mask)
        assert res.edges == direct
        assert res.passed


@pytest.mark.parametrize("q,t,eps,expected", [
    (3, 1, 0.0, 0.0),
    (3, 1, 1.0, 12 - 1.5 * 3 ** 2.5),
    (101, 1, 0.5, 101 * (101**2 - 1) / 2 * 0.25 - 1.5 * 101 ** 2.5 * 0.5),
])
def test_prefix_edge_lower_bound(q, t, eps, expected):
    assert analysis.prefix_edge_lower_bound(q, t, eps) == pytest.approx(expected)


def test_prefix_edge_lower_bound_holds_on_h101():
    G = build_furedi(101, 1)
    prefix = strip_loops(G).prefix_edge_counts()
    for eps in np.linspace(0, 1, 41):
        N = math.floor(eps * G.n)
        assert prefix[N] >= analysis.prefix_edge_lower_bound(101, 1, N / G.n)


def test_k2_free_agrees_with_networkx_monomorphism():
    rng = np.random.default_rng(7)
    for _ in range(40):
        n = int(rng.integers(4, 10))
        G = random_graph(rng, n, rng.uniform(0.2, 0.8))
        ng = nx.Graph(list(G.edges()))
        ng.add_nodes_from(range(n))
        for t in (1, 2):
            pattern = nx.complete_bipartite_graph(2, t + 1)
            found = nx.algorithms.isomorphism.GraphMatcher(ng, pattern).subgraph_is_monomorphic()
            assert analysis.is_k2_free(G, t) == (not found)
