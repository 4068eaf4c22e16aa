"""Graphs: girth, high-girth library, double cover, spectra, mixing."""

import math

import networkx as nx
import numpy as np
import pytest

from cooplrc.graphs import (
    BipartiteGraph,
    Graph,
    double_cover,
    expansion_check,
    girth,
    graph_from_text,
    graph_to_text,
    heawood_graph,
    high_girth_library,
    lambda2,
    mixing_check,
)


def _to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.edges)
    return G


def _lambda_oracle(g: Graph) -> float:
    # lambda = max(second largest eigenvalue, |smallest eigenvalue|)
    A = np.zeros((g.vertex_count, g.vertex_count))
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1.0
    w = np.sort(np.linalg.eigvalsh(A))
    return max(w[-2], abs(w[0]))


def test_girth_against_networkx_random():
    rng = np.random.default_rng(17)
    for trial in range(15):
        n = int(rng.integers(5, 14))
        G = nx.gnp_random_graph(n, 0.35, seed=int(rng.integers(0, 10**6)))
        g = Graph(n, tuple(G.edges()))
        expected = nx.girth(G)
        got = girth(g)
        assert got == expected or (got == math.inf and expected == math.inf)


def test_girth_named_graphs():
    assert girth(heawood_graph()) == 6
    assert girth(high_girth_library("complete-3")) == 4  # K_{3,3}
    assert girth(high_girth_library("cycle-10")) == 10
    tree = Graph(4, ((0, 1), (0, 2), (0, 3)))
    assert girth(tree) == math.inf


def test_heawood_is_the_heawood_graph():
    g = heawood_graph().as_graph()
    assert g.vertex_count == 14 and len(g.edges) == 21
    assert g.is_regular() and g.degree_range() == (3, 3)
    assert nx.is_isomorphic(_to_nx(g), nx.heawood_graph())


def test_pg3_incidence():
    g = high_girth_library("pg-3")
    assert g.left_count == 13 and g.right_count == 13
    assert set(g.left_degrees()) == {4}
    assert girth(g) == 6


def test_high_girth_search():
    g = high_girth_library((3, 8, 1))
    assert set(g.left_degrees()) == {3} and set(g.right_degrees()) == {3}
    assert girth(g) >= 8


def test_high_girth_unknown_name():
    with pytest.raises(ValueError):
        high_girth_library("petersen")


def test_double_cover_k4():
    k4 = Graph(4, tuple((i, j) for i in range(4) for j in range(i + 1, 4)))
    cover = double_cover(k4)
    assert cover.left_count == cover.right_count == 4
    assert len(cover.edges) == 12
    assert set(cover.left_degrees()) == set(cover.right_degrees()) == {3}


def test_double_cover_odd_cycle():
    c5 = Graph(5, tuple((i, (i + 1) % 5) for i in range(5)))
    cover = double_cover(c5)
    # odd cycle lifts to one big cycle of doubled length
    assert girth(cover) == 10
    assert nx.is_isomorphic(_to_nx(cover.as_graph()), nx.cycle_graph(10))


def test_double_cover_preserves_girth_of_bipartite():
    g = heawood_graph().as_graph()
    assert girth(double_cover(g)) >= girth(g)


@pytest.mark.parametrize(
    "edges,n",
    [
        (tuple((i, j) for i in range(4) for j in range(i + 1, 4)), 4),  # K4
        (tuple((i, (i + 1) % 6) for i in range(6)), 6),  # C6
        (tuple((i, 3 + j) for i in range(3) for j in range(3)), 6),  # K_{3,3}
    ],
    ids=["K4", "C6", "K33"],
)
def test_lambda2_matches_dense_eigensolver(edges, n):
    g = Graph(n, edges)
    sp = lambda2(g)
    assert sp.lam == pytest.approx(_lambda_oracle(g), abs=1e-6)


def test_lambda2_known_values():
    k4 = Graph(4, tuple((i, j) for i in range(4) for j in range(i + 1, 4)))
    sp = lambda2(k4)
    assert sp.eigen_top == pytest.approx(3.0, abs=1e-6)
    assert sp.lam == pytest.approx(1.0, abs=1e-6)
    c6 = Graph(6, tuple((i, (i + 1) % 6) for i in range(6)))
    # bipartite: -2 is an eigenvalue, so the second absolute value is 2
    assert lambda2(c6).lam == pytest.approx(2.0, abs=1e-6)


def test_mixing_check_k4_cover():
    k4 = Graph(4, tuple((i, j) for i in range(4) for j in range(i + 1, 4)))
    cover = double_cover(k4)
    lam = lambda2(k4).lam
    assert mixing_check(cover, lam, s_max=4) <= 1e-9


def test_mixing_check_requires_regularity():
    g = BipartiteGraph(2, 2, ((0, 0), (0, 1), (1, 0)))
    with pytest.raises(ValueError):
        mixing_check(g, 1.0)


def test_expansion_singletons_perfect():
    g = BipartiteGraph(3, 5, tuple((i, j) for i in range(3) for j in range(5)))
    cert = expansion_check(g, 1)
    assert cert.epsilon_worst == 0.0
    assert cert.exhaustive


def test_expansion_detects_shared_neighborhoods():
    # both left vertices see the same two right vertices: pairs expand badly
    g = BipartiteGraph(2, 2, ((0, 0), (0, 1), (1, 0), (1, 1)))
    cert = expansion_check(g, 2)
    assert cert.epsilon_worst == pytest.approx(0.5)
    assert cert.witness == (0, 1)


def test_expansion_smax_zero_error():
    g = BipartiteGraph(1, 1, ((0, 0),))
    with pytest.raises(ValueError):
        expansion_check(g, 0)


def test_graph_text_roundtrip():
    g = Graph(4, ((0, 1), (1, 2), (2, 3)))
    g2 = graph_from_text(graph_to_text(g))
    assert isinstance(g2, Graph) and g2.edges == g.edges
    b = heawood_graph()
    b2 = graph_from_text(graph_to_text(b))
    assert isinstance(b2, BipartiteGraph) and b2.edges == b.edges


def test_graph_text_bad_header():
    with pytest.raises(ValueError):
        graph_from_text("digraph 3\n0 1\n")


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        BipartiteGraph(1, 1, ((0, 1),))
