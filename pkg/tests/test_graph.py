import pytest
from hypothesis import given, settings

from chibound.constructions import mycielski_tower
from chibound.errors import IndexOutOfRange, SelfLoop
from chibound.graph import (complete_graph, components, cycle_graph, disjoint_union, empty_graph,
                            induced_subgraph, is_connected, is_triangle_free, make_graph)
from chibound.solvers import brute_force_chi, brute_force_omega

from .conftest import graphs


def test_make_graph_k2():
    G = make_graph(2, [(0, 1)])
    assert G.order == 2 and G.n_edges == 1 and G.has_edge(1, 0)


def test_make_graph_empty():
    G = make_graph(0, [])
    assert G.order == 0 and G.n_edges == 0 and G.edges() == []


def test_make_graph_c5(C5):
    assert C5.n_edges == 5
    assert [C5.degree(v) for v in C5.vertices] == [2] * 5


def test_make_graph_dedups_and_symmetrizes():
    G = make_graph(3, [(0, 1), (1, 0), (0, 1), (2, 1)])
    assert G.edges() == [(0, 1), (1, 2)]


def test_make_graph_errors():
    with pytest.raises(IndexOutOfRange):
        make_graph(2, [(0, 2)])
    with pytest.raises(SelfLoop):
        make_graph(3, [(1, 1)])


def test_induced_subgraph_identity(C5):
    H, index = induced_subgraph(C5, range(5))
    assert H == C5 and index == (0, 1, 2, 3, 4)


def test_induced_subgraph_empty(C5):
    H, index = induced_subgraph(C5, [])
    assert H.order == 0 and index == ()


def test_induced_subgraph_path(C5):
    H, index = induced_subgraph(C5, {2, 0, 1})
    assert index == (0, 1, 2)
    assert H.edges() == [(0, 1), (1, 2)]


def test_induced_subgraph_reindexes_ascending(C5):
    H, index = induced_subgraph(C5, [4, 0, 2])
    assert index == (0, 2, 4)
    # 0-4 is the only C5 edge among {0, 2, 4}
    assert H.edges() == [(0, 2)]


def test_induced_subgraph_out_of_range(C5):
    with pytest.raises(IndexOutOfRange):
        induced_subgraph(C5, [5])


def test_disjoint_union_k2_k2(K2):
    U = disjoint_union(K2, K2)
    assert U.order == 4 and U.n_edges == 2 and len(components(U)) == 2
    assert U.edges() == [(0, 1), (2, 3)]


def test_disjoint_union_with_empty_is_identity(C5):
    assert disjoint_union(C5, empty_graph()) == C5
    assert disjoint_union(empty_graph(), C5) == C5


def test_disjoint_union_c5_k2(C5, K2):
    U = disjoint_union(C5, K2)
    assert (U.order, U.n_edges) == (7, 6)
    assert brute_force_omega(U) == 2
    assert brute_force_chi(U) == 3


def test_components():
    assert components(cycle_graph(5)) == [(0, 1, 2, 3, 4)]
    K2 = complete_graph(2)
    assert components(disjoint_union(K2, K2)) == [(0, 1), (2, 3)]
    assert components(empty_graph()) == []
    assert components(make_graph(4, [(1, 3)])) == [(0,), (1, 3), (2,)]


def test_is_connected_conventions():
    assert not is_connected(empty_graph())
    assert is_connected(empty_graph(1))
    assert not is_connected(empty_graph(2))


def test_triangle_free():
    assert is_triangle_free(cycle_graph(5))
    assert not is_triangle_free(complete_graph(3))
    grotzsch, _ = mycielski_tower(4)
    assert is_triangle_free(grotzsch)


def test_triangle_free_exhaustive_scan_on_grotzsch():
    from itertools import combinations
    G, _ = mycielski_tower(4)
    assert not any(G.has_edge(a, b) and G.has_edge(b, c) and G.has_edge(a, c)
                   for a, b, c in combinations(range(G.order), 3))


@given(graphs())
def test_induced_full_set_is_identity(G):
    assert induced_subgraph(G, range(G.order))[0] == G


@given(graphs(max_order=7), graphs(max_order=7))
def test_union_component_count(G, H):
    if G.order and H.order:
        assert len(components(disjoint_union(G, H))) == len(components(G)) + len(components(H))


@settings(max_examples=60)
@given(graphs(max_order=7))
def test_triangle_free_agrees_with_clique_number(G):
    assert is_triangle_free(G) == (brute_force_omega(G) <= 2)


@settings(max_examples=40)
@given(graphs(max_order=7), graphs(max_order=7))
def test_monotone_under_induced_subgraphs(G, S_source):
    S = [v for v in range(G.order) if v < S_source.order and S_source.degree(v) % 2 == 0]
    H, _ = induced_subgraph(G, S)
    assert brute_force_chi(H) <= brute_force_chi(G)
    assert brute_force_omega(H) <= brute_force_omega(G)
