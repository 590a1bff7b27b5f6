import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import divisors, small_primes
from inftur.errors import OrderUnavailable, ZeroPair
from inftur.furedi import (ClassRep, build_furedi, canonicalize, load_graph, read_graph,
                           strip_loops, write_graph)
from inftur.numbers import PrimeModulus, element_of_order

PAIRS = [(p, t) for p in small_primes(23) for t in divisors(p - 1)]


def reference_graph(p, t):
    """Direct transcription of the definition over explicit orbit sets."""
    g = int(element_of_order(p, t))
    X = {pow(g, i, p) for i in range(t)}
    classes = {}
    for a, b in itertools.product(range(p), repeat=2):
        if (a, b) != (0, 0):
            orbit = min(((a * x) % p, (b * x) % p) for x in X)
            classes.setdefault(orbit, None)
    reps = sorted(classes)
    adj = np.zeros((len(reps), len(reps)), dtype=int)
    for i, (a, b) in enumerate(reps):
        for j, (x, y) in enumerate(reps):
            if (a * x + b * y) % p in X:
                adj[i, j] = 1
    return reps, adj


def F(p, v):
    return PrimeModulus(p).element(v)


def test_canonicalize_examples():
    assert canonicalize(F(3, 2), F(3, 0), F(3, 1), 1) == ClassRep(2, 0)
    assert canonicalize(F(5, 4), F(5, 2), F(5, 4), 2) == ClassRep(1, 3)
    with pytest.raises(ZeroPair):
        canonicalize(F(5, 0), F(5, 0), F(5, 1), 1)


@given(st.sampled_from(PAIRS), st.data())
def test_canonicalize_is_orbit_invariant(pt, data):
    p, t = pt
    g = element_of_order(p, t)
    a = data.draw(st.integers(0, p - 1))
    b = data.draw(st.integers(0 if a else 1, p - 1))
    rep = canonicalize(F(p, a), F(p, b), g, t)
    assert canonicalize(F(p, rep.a), F(p, rep.b), g, t) == rep
    for i in range(t):
        x = pow(int(g), i, p)
        assert canonicalize(F(p, a * x % p), F(p, b * x % p), g, t) == rep


@pytest.mark.parametrize("p,t,nv,deg,loops", [(3, 1, 8, 3, 4), (5, 2, 12, 5, None), (13, 4, 42, 13, None)])
def test_build_examples(p, t, nv, deg, loops):
    G = build_furedi(p, t)
    assert G.n == nv
    assert set((G.neighbors.shape[1],)) == {deg}
    if loops is not None:
        assert G.loop_count == loops


def test_build_unavailable_order():
    with pytest.raises(OrderUnavailable):
        build_furedi(5, 3)


@pytest.mark.parametrize("p,t", PAIRS)
def test_build_matches_reference(p, t):
    G = build_furedi(p, t)
    reps, adj = reference_graph(p, t)
    assert [(v.a, v.b) for v in G.vertices] == reps
    assert (G.to_dense() == adj).all()
    assert (adj.sum(axis=1) == p).all()


def test_strip_loops_examples():
    G = build_furedi(3, 1)
    S = strip_loops(G)
    assert S.n == 8 and S.edge_count == 10
    H = build_furedi(5, 1)
    assert H.n == 24
    assert strip_loops(H).edge_count == (24 * 5 - H.loop_count) // 2 == H.edge_count - H.loop_count


@pytest.mark.parametrize("p,t", [(5, 2), (7, 3), (11, 1)])
def test_strip_loops_keeps_offdiagonal(p, t):
    G = build_furedi(p, t)
    dense = G.to_dense()
    np.fill_diagonal(dense, 0)
    assert (strip_loops(G).to_dense() == dense).all()


@pytest.mark.parametrize("p,t", [(3, 1), (7, 2), (13, 4)])
def test_write_read_roundtrip(tmp_path, p, t):
    G = build_furedi(p, t)
    path = tmp_path / "g.txt"
    write_graph(G, path)
    hp, ht, nv, edges = read_graph(path)
    assert (hp, ht, nv) == (p, t, G.n)
    assert edges == sorted(edges) and len(edges) == G.edge_count
    L = load_graph(path)
    assert (L.to_dense() == G.to_dense()).all()
    assert L.loop_count == G.loop_count
    assert (L.simple().to_dense() == strip_loops(G).to_dense()).all()
    assert path.read_bytes() == (write_graph(G, tmp_path / "h.txt") or (tmp_path / "h.txt").read_bytes())


def test_read_graph_rejects_bad_loop_count(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 1 2 1\n0 1\n")
    with pytest.raises(ValueError):
        read_graph(path)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(p, t) for p in small_primes(60) for t in divisors(p - 1)]))
def test_invariants(pt):
    p, t = pt
    G = build_furedi(p, t)
    assert G.n == (p * p - 1) // t
    assert G.neighbors.shape == (G.n, p)
    assert (np.diff(G.neighbors, axis=1) > 0).all()  # simple, no repeated neighbours
    dense = G.to_dense()
    assert (dense == dense.T).all()
    assert (np.diag(dense) == G.loop_flags).all()
