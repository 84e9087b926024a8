import itertools
from fractions import Fraction

import pytest

from tightcycle.core import (BoundedDigraph, BoundedHypergraph, Hypergraph,
                             build, clique_graph, complete, han_zhao,
                             han_zhao_valid_j, link, min_degree,
                             orientation_closure, parse, random_graph,
                             serialize, shadow, tight_cycle, tight_path,
                             with_shadow)
from tightcycle.errors import InputError


def test_build_basic():
    G = build(4, 3, [{0, 1, 2}, {1, 2, 3}])
    assert G.n == 4 and G.k == 3
    assert G.edge_list() == [(0, 1, 2), (1, 2, 3)]


def test_build_duplicate_after_canonicalization():
    with pytest.raises(InputError):
        Hypergraph(3, 3, frozenset({(0, 1, 2), (2, 1, 0)}))


def test_build_rejects_bad_edges():
    with pytest.raises(InputError):
        build(3, 3, [(0, 1, 3)])
    with pytest.raises(InputError):
        build(4, 3, [(0, 1)])
    with pytest.raises(InputError):
        build(4, 2, [(1, 1)])


def test_tight_cycle_matches_direct_construction():
    G = tight_cycle(7, 3)
    expected = {tuple(sorted(((i) % 7, (i + 1) % 7, (i + 2) % 7))) for i in range(7)}
    assert set(G.edges) == expected
    assert len(G.edges) == 7


def test_complete_counts():
    assert len(complete(4, 3).edges) == 4
    assert len(complete(6, 3).edges) == 20


def test_shadow_complete_and_single_edge():
    assert shadow(complete(4, 3)).edges == complete(4, 2).edges
    single = build(3, 3, [(0, 1, 2)])
    assert sorted(shadow(single).edges) == [(0, 1), (0, 2), (1, 2)]


def test_shadow_c5_all_pairs():
    # oracle: direct enumeration of consecutive-pair coverage
    G = tight_cycle(5, 3)
    expected = set()
    for e in G.edges:
        for f in itertools.combinations(e, 2):
            expected.add(f)
    assert expected == set(itertools.combinations(range(5), 2))
    assert set(shadow(G).edges) == expected


def test_shadow_requires_k_at_least_two():
    with pytest.raises(InputError):
        shadow(Hypergraph(3, 1, frozenset({(0,), (1,)})))


def test_shadow_idempotent_layering():
    G = random_graph(8, 4, 0.4, seed=5)
    s2 = shadow(shadow(G))
    assert all(len(e) == 2 for e in s2.edges)
    covered = {f for e in G.edges for f in itertools.combinations(e, 2)}
    assert set(s2.edges) == covered


def test_link_cycle():
    G = tight_cycle(5, 3)
    L = link(G, {0})
    assert set(L.edges) == {(3, 4), (1, 4), (1, 2)}
    assert len(L.edges) == G.degree({0})


def test_link_complete_pair():
    L = link(complete(5, 3), {0, 1})
    assert set(L.edges) == {(2,), (3,), (4,)}


def test_link_empty_graph():
    L = link(Hypergraph(4, 3), {0})
    assert not L.edges


def test_link_edge_count_equals_degree():
    G = random_graph(9, 3, 0.5, seed=11)
    for S in itertools.combinations(range(9), 2):
        assert len(link(G, S).edges) == G.degree(S)


def test_link_errors():
    with pytest.raises(InputError):
        link(complete(4, 3), {0, 1, 2})
    with pytest.raises(InputError):
        link(complete(4, 3), {9})


def test_clique_graph():
    K5 = complete(5, 2)
    assert clique_graph(K5, 4).edges == complete(5, 4).edges
    C5 = build(5, 2, [(i, (i + 1) % 5) for i in range(5)])
    assert not clique_graph(C5, 3).edges


def test_clique_graph_tight_cycle_has_no_k4():
    # oracle: exhaustive 4-set check
    G = tight_cycle(7, 3)
    for T in itertools.combinations(range(7), 4):
        assert not all(G.has_edge(f) for f in itertools.combinations(T, 3))
    assert not clique_graph(G, 4).edges


def test_clique_graph_identity_at_k():
    G = random_graph(7, 3, 0.6, seed=3)
    assert clique_graph(G, 3).edges == G.edges


def test_orientation_closure_counts():
    D = orientation_closure(build(2, 2, [(0, 1)]))
    assert set(D.edges) == {(0, 1), (1, 0)}
    D3 = orientation_closure(build(3, 3, [(0, 1, 2)]))
    assert len(D3.edges) == 6


def test_orientation_closure_shift_closed():
    from tightcycle.core import is_shift_closed
    G = random_graph(7, 3, 0.4, seed=2)
    assert is_shift_closed(orientation_closure(G))


def test_min_degree_values():
    assert min_degree(complete(5, 3), 2).minimum == 3
    prof = min_degree(tight_cycle(7, 3), 1)
    assert prof.minimum == 3
    assert prof.relative == Fraction(3, 15)


def test_min_degree_monotone_relative():
    # relative d-degrees are non-increasing in d
    for seed in range(50):
        G = random_graph(8, 3, 0.5, seed=seed)
        r1 = min_degree(G, 1).relative
        r2 = min_degree(G, 2).relative
        assert r1 >= r2


def test_han_zhao_certificate():
    G, X = han_zhao(6, 3, 2, j=1)
    assert X == frozenset({0, 1, 2})
    assert len(G.edges) == 11
    for e in itertools.combinations(range(6), 3):
        inter = len(X & set(e))
        assert G.has_edge(e) == (inter != 1)


def test_han_zhao_valid_j_both():
    assert han_zhao_valid_j(3, 2) == [1, 2]
    with pytest.raises(InputError):
        han_zhao(6, 3, 2, j=0)


def test_serialize_roundtrip():
    for G in (tight_cycle(7, 3),
              BoundedHypergraph(4, 3, frozenset({(0, 1, 2), (1, 2)})),
              orientation_closure(build(4, 3, [(0, 1, 2), (1, 2, 3)]))):
        text = serialize(G)
        assert parse(text) == G
        assert serialize(parse(text)) == text


def test_parse_bad_header():
    with pytest.raises(InputError):
        parse("nonsense\n0 1 2\n")


def test_tight_path():
    P = tight_path(5, 3)
    assert P.edge_list() == [(0, 1, 2), (1, 2, 3), (2, 3, 4)]


def test_with_shadow_layers():
    B = with_shadow(tight_cycle(5, 3))
    assert B.layer(3).edges == tight_cycle(5, 3).edges
    assert B.layer(2).edges == shadow(tight_cycle(5, 3)).edges


def test_bounded_digraph_layers():
    D = BoundedDigraph(4, 3, frozenset({(0, 1, 2), (0, 1)}))
    assert D.layer(3) == frozenset({(0, 1, 2)})
    assert D.layer(2) == frozenset({(0, 1)})
    assert D.underlying().edges == frozenset({(0, 1, 2)})
