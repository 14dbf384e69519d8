import pytest
from hypothesis import given, settings, strategies as st

from ccenum.errors import InputError
from ccenum.graph import (SignedGraph, connected_components, induced_subgraph,
                          is_connected, omega, positive_graph)

from conftest import frustrated_triangle, random_signed_graph
import random


def test_construction_counts_and_signs():
    g = frustrated_triangle()
    assert (g.n, g.m, g.m_pos, g.m_neg) == (3, 3, 2, 1)
    assert g.sign(0, 1) == g.sign(1, 0) == 1
    assert g.sign(1, 2) == -1
    assert g.sign(0, 0) == 0
    assert g.sign(2, 0) == 1


def test_construction_rejects_bad_edges():
    with pytest.raises(InputError):
        SignedGraph(3, [(0, 0, 1)])
    with pytest.raises(InputError):
        SignedGraph(3, [(0, 3, 1)])
    with pytest.raises(InputError):
        SignedGraph(3, [(0, 1, 2)])
    with pytest.raises(InputError):
        SignedGraph(3, [(0, 1, 1), (1, 0, -1)])


def test_omega_examples():
    all_pos = SignedGraph(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)])
    assert omega(all_pos, [0, 1, 2], [0, 1, 2]) == 3
    assert omega(all_pos, [0], [0]) == 0
    g = frustrated_triangle()
    assert omega(g, [0], [1, 2]) == 2
    assert omega(g, [1], [2]) == -1
    with pytest.raises(InputError):
        omega(g, [0, 5], [1])


def test_omega_symmetry_and_additivity():
    rng = random.Random(1)
    for _ in range(25):
        n = rng.randint(2, 8)
        g = random_signed_graph(rng, n, 0.7, 0.5)
        verts = list(range(n))
        a = [u for u in verts if rng.random() < 0.5]
        b = [u for u in verts if rng.random() < 0.5]
        assert omega(g, a, b) == omega(g, b, a)
        # disjoint split additivity
        cut = rng.randint(0, n)
        left, right = verts[:cut], verts[cut:]
        if left and right:
            assert omega(g, verts, verts) == (omega(g, left, left)
                                              + omega(g, right, right)
                                              + omega(g, left, right))


def test_induced_subgraph():
    g = frustrated_triangle()
    sub, index = induced_subgraph(g, [0, 1])
    assert sub.n == 2 and sub.edges == ((0, 1, 1),)
    assert index == {0: 0, 1: 1}
    whole, _ = induced_subgraph(g, [0, 1, 2])
    assert whole == g
    empty, _ = induced_subgraph(g, [])
    assert empty.n == 0 and empty.m == 0
    # re-indexing keeps ascending original order
    sub2, index2 = induced_subgraph(g, [2, 0])
    assert index2 == {0: 0, 2: 1}
    assert sub2.edges == ((0, 1, 1),)


def test_positive_graph():
    all_neg = SignedGraph(3, [(0, 1, -1), (0, 2, -1), (1, 2, -1)])
    assert positive_graph(all_neg).m == 0
    all_pos = SignedGraph(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)])
    assert positive_graph(all_pos) == all_pos
    mixed = SignedGraph(3, [(0, 1, 1), (1, 2, -1)])
    assert positive_graph(mixed).edges == ((0, 1, 1),)


def test_is_connected():
    g = frustrated_triangle()
    assert is_connected(g, [0, 1, 2])
    two_edges = SignedGraph(4, [(0, 1, 1), (2, 3, -1)])
    assert not is_connected(two_edges, [0, 1, 2, 3])
    assert is_connected(two_edges, [0])
    with pytest.raises(InputError):
        is_connected(g, [])


def test_connected_components():
    g = SignedGraph(5, [(0, 1, 1), (2, 3, -1)])
    assert connected_components(g) == [[0, 1], [2, 3], [4]]


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=20), st.randoms(use_true_random=False))
def test_dense_and_sparse_adjacency_agree(n, pyrandom):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if pyrandom.random() < 0.4:
                edges.append((u, v, -1 if pyrandom.random() < 0.5 else 1))
    dense = SignedGraph(n, edges, dense_limit=2048)
    sparse = SignedGraph(n, edges, dense_limit=n - 1)
    assert dense._adj is not None
    assert sparse._adj is None and sparse._pair_signs is not None
    for u in range(n):
        for v in range(n):
            assert dense.sign(u, v) == sparse.sign(u, v)
    assert dense == sparse
