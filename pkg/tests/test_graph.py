import numpy as np
from hypothesis import given, strategies as st

from inftur.graph import OrderedGraph, complete_bipartite, cycle_graph, disjoint_union


def test_from_edges_dedups_and_sorts():
    G = OrderedGraph.from_edges(4, [(0, 1), (1, 0), (2, 1), (3, 2)])
    assert G.edge_count == 3
    assert G.neighbors(1).tolist() == [0, 2]
    assert G.degrees().tolist() == [1, 2, 2, 1]
    assert G.has_edge(2, 3) and not G.has_edge(0, 3)


def test_cycle_and_bipartite():
    C = cycle_graph(5)
    assert C.edge_count == 5 and set(C.degrees().tolist()) == {2}
    K = complete_bipartite(2, 3)
    assert K.edge_count == 6
    assert sorted(K.degrees().tolist()) == [2, 2, 2, 3, 3]


def test_disjoint_union_offsets_labels():
    U = disjoint_union([cycle_graph(3), complete_bipartite(1, 2)])
    assert U.n == 6
    assert sorted(U.edges()) == [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5)]


edge_lists = st.integers(min_value=1, max_value=15).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
        max_size=40)))


@given(edge_lists)
def test_prefix_edge_counts_match_direct_count(data):
    n, edges = data
    G = OrderedGraph.from_edges(n, edges)
    und = {(min(u, v), max(u, v)) for u, v in edges}
    prefix = G.prefix_edge_counts()
    for N in range(n + 1):
        assert prefix[N] == sum(1 for u, v in und if v < N)
    assert G.edge_count == len(und)
    dense = G.to_dense()
    assert (dense == dense.T).all() and dense.sum() == 2 * len(und)


@given(edge_lists, st.randoms())
def test_induced_edge_count(data, rnd):
    n, edges = data
    G = OrderedGraph.from_edges(n, edges)
    mask = np.array([rnd.random() < 0.5 for _ in range(n)])
    und = {(min(u, v), max(u, v)) for u, v in edges}
    assert G.induced_edge_count(mask) == sum(1 for u, v in und if mask[u] and mask[v])
