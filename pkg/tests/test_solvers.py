import time

import pytest
from hypothesis import given, settings

from chibound.constructions import build_block, mycielski_tower, BlockSpec
from chibound.errors import InvalidParameter, TooLarge
from chibound.graph import (complete_graph, cycle_graph, disjoint_union, empty_graph, induced_subgraph,
                            make_graph, path_graph)
from chibound.solvers import (Clock, Coloring, CliqueCert, brute_force_chi, brute_force_chi_restricted,
                              brute_force_omega, chi_restricted, chromatic_number, clique_number,
                              k_colorable, verify_clique, verify_coloring)

from .conftest import graphs, random_corpus


def test_empty_graph_conventions():
    G = empty_graph()
    assert clique_number(G).value == 0 and clique_number(G).certificate == CliqueCert(())
    assert chromatic_number(G).value == 0
    assert chi_restricted(G, 3).value == 0
    assert brute_force_chi(G) == 0 and brute_force_omega(G) == 0


def test_clique_number_examples():
    assert clique_number(mycielski_tower(4)[0]).value == 2
    X = build_block(BlockSpec(2, 3)).graph
    assert clique_number(X).value == brute_force_omega(X) == 2
    assert clique_number(complete_graph(6)).value == 6


def test_chromatic_number_examples(K2, C5):
    assert chromatic_number(K2).value == 2
    assert chromatic_number(C5).value == brute_force_chi(C5) == 3


def test_chromatic_number_t5():
    T, _ = mycielski_tower(5)
    res = chromatic_number(T)
    assert res.value == 5 and res.exact and verify_coloring(T, res.certificate)
    assert k_colorable(T, 4) is None


def test_k_colorable(C5):
    assert k_colorable(C5, 2) is None
    col = k_colorable(C5, 3)
    assert col is not None and verify_coloring(C5, col)
    assert k_colorable(mycielski_tower(4)[0], 3) is None
    assert k_colorable(empty_graph(), 0) == Coloring(0, ())
    assert k_colorable(empty_graph(3), 0) is None
    with pytest.raises(InvalidParameter):
        k_colorable(C5, -1)


def test_k_colorable_uses_at_most_k_colors(P4):
    col = k_colorable(P4, 5)
    assert col.colors_used == 2 and verify_coloring(P4, col)


def test_verify_coloring_examples(K2, C5):
    assert verify_coloring(K2, Coloring(2, (1, 2)))
    assert not verify_coloring(K2, Coloring(1, (1, 1)))
    assert not verify_coloring(K2, Coloring(3, (1, 2)))  # colour 3 unused
    assert not verify_coloring(K2, Coloring(2, (1,)))
    assert verify_clique(C5, (0, 1))
    assert not verify_clique(C5, (0, 2))
    assert not verify_clique(C5, (0, 0))
    assert not verify_clique(C5, (7,))


@pytest.mark.parametrize("G, chi, omega", [
    (cycle_graph(5), 3, 2),
    (complete_graph(4), 4, 4),
    (path_graph(4), 2, 2),
])
def test_brute_force_examples(G, chi, omega):
    assert brute_force_chi(G) == chi and brute_force_omega(G) == omega


def test_brute_force_cap():
    with pytest.raises(TooLarge):
        brute_force_chi(empty_graph(13))
    with pytest.raises(TooLarge):
        brute_force_omega(empty_graph(13))
    with pytest.raises(TooLarge):
        brute_force_chi_restricted(empty_graph(13), 1)


def test_chi_restricted_examples():
    T4, _ = mycielski_tower(4)
    res = chi_restricted(T4, 2)
    assert res.value == 4 and res.witness == tuple(range(11))
    X = build_block(BlockSpec(2, 4)).graph
    res = chi_restricted(X, 1)
    assert res.value == 1
    naive = max(
        (1 if S else 0)
        for S in range(1 << X.order)
        if not any(S >> v & 1 and X.adj[v] & S for v in range(X.order))
    )
    assert naive == 1
    assert chi_restricted(cycle_graph(5), 1).value == 1
    assert chi_restricted(cycle_graph(5), 0).value == 0
    with pytest.raises(InvalidParameter):
        chi_restricted(cycle_graph(5), -1)


def test_chi_restricted_needs_transversal():
    # K4 plus a pendant path: omega <= 2 subgraphs reach chi 2 only; <= 3 reach 3.
    G = make_graph(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)])
    for n in range(5):
        assert chi_restricted(G, n).value == brute_force_chi_restricted(G, n)[0]
    assert [chi_restricted(G, n).value for n in range(5)] == [0, 1, 2, 3, 4]


def test_timeout_degrades_to_bound():
    T, _ = mycielski_tower(6)
    res = chromatic_number(T, budget=0.05)
    assert res.timed_out and res.lower <= 6 <= res.upper == res.value
    assert verify_coloring(T, res.certificate)


def test_clock_raises_after_deadline():
    from chibound.errors import SolverTimeout
    clock = Clock(0.0)
    time.sleep(0.001)
    with pytest.raises(SolverTimeout):
        for _ in range(1000):
            clock.tick()


def test_oracle_equivalence_corpus():
    for G in random_corpus(220, 7, seed=3):
        chi, om = chromatic_number(G), clique_number(G)
        assert chi.value == brute_force_chi(G)
        assert om.value == brute_force_omega(G)
        assert verify_coloring(G, chi.certificate) and chi.certificate.colors_used == chi.value
        assert verify_clique(G, om.certificate) and len(om.certificate.vertices) == om.value


def test_deterministic_certificates():
    T, _ = mycielski_tower(5)
    assert chromatic_number(T).certificate == chromatic_number(T).certificate
    assert clique_number(T).certificate == clique_number(T).certificate


@settings(max_examples=80)
@given(graphs(max_order=8))
def test_omega_at_most_chi(G):
    assert clique_number(G).value <= chromatic_number(G).value


@settings(max_examples=50)
@given(graphs(max_order=6), graphs(max_order=6))
def test_disjoint_union_laws(G, H):
    U = disjoint_union(G, H)
    assert chromatic_number(U).value == max(chromatic_number(G).value, chromatic_number(H).value)
    assert clique_number(U).value == max(clique_number(G).value, clique_number(H).value)


@settings(max_examples=60, deadline=None)
@given(graphs(max_order=9))
def test_restricted_chi_laws(G):
    chi = chromatic_number(G).value
    om = clique_number(G).value
    values = [chi_restricted(G, n).value for n in range(om + 2)]
    assert all(v <= chi for v in values)
    assert values == sorted(values)
    assert values[om] == chi


@settings(max_examples=60, deadline=None)
@given(graphs(max_order=9))
def test_restricted_witness_verifies(G):
    for n in range(4):
        res = chi_restricted(G, n)
        H, _ = induced_subgraph(G, res.witness)
        assert clique_number(H).value <= n
        assert chromatic_number(H).value == res.value


def test_restricted_matches_naive_up_to_12_vertices():
    for G in random_corpus(25, 12, seed=11):
        for n in range(5):
            assert chi_restricted(G, n).value == brute_force_chi_restricted(G, n)[0]


def test_subset_table_oracle_agrees_with_assignment_oracle():
    for G in random_corpus(60, 8, seed=5):
        assert brute_force_chi_restricted(G, G.order)[0] == brute_force_chi(G)


def test_certificates_are_lexicographically_least():
    from itertools import combinations, product
    for G in random_corpus(60, 6, seed=17):
        chi, om = chromatic_number(G), clique_number(G)
        colorings = [a for a in product(range(1, chi.value + 1), repeat=G.order)
                     if all(a[u] != a[v] for u, v in G.edges()) and len(set(a)) == chi.value]
        assert chi.certificate.assignment == min(colorings, default=())
        cliques = [S for S in combinations(range(G.order), om.value) if verify_clique(G, S)]
        assert om.certificate.vertices == min(cliques)
