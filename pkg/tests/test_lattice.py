import itertools

import pytest

from tightcycle.connectivity import aligned_closure
from tightcycle.core import (BoundedDigraph, build, complete,
                             orientation_closure, random_graph, tight_cycle,
                             with_shadow)
from tightcycle.errors import InputError, PreconditionError
from tightcycle.lattice import (bounded_decomposition, contains, indicator,
                                is_complete, lattice_of, transferral,
                                transferral_from_walk)


def brute_force_decomposable(vectors, b, q):
    """Oracle: exhaustive coefficient search over [-q, q]^len(vectors)."""
    n = len(b)
    for coeffs in itertools.product(range(-q, q + 1), repeat=len(vectors)):
        tot = [0] * n
        for c, vec in zip(coeffs, vectors):
            for i in range(n):
                tot[i] += c * vec[i]
        if tuple(tot) == tuple(b):
            return True
    return False


def test_single_edge_lattice():
    G = build(3, 3, [(0, 1, 2)])
    L = lattice_of(G)
    assert contains(L, (1, 1, 1))
    assert contains(L, (2, 2, 2))
    assert not contains(L, (1, 0, 0))
    assert not is_complete(L, 3)


def test_zero_vector():
    L = lattice_of(tight_cycle(5, 3))
    assert contains(L, (0,) * 5)


def test_generators_contained():
    for G in (tight_cycle(5, 3), complete(4, 3), random_graph(7, 3, 0.4, seed=1)):
        if not G.edges:
            continue
        L = lattice_of(G)
        for g in L.generators:
            assert contains(L, g)
        for row in L.basis:
            assert contains(L, row)


def test_c5_rank_and_adjacent_difference():
    G = tight_cycle(5, 3)
    L = lattice_of(G)
    assert len(L.basis) == 5
    # 1_3 - 1_0 = 1_{{1,2,3}} - 1_{{0,1,2}}
    assert contains(L, transferral(3, 0, 5))


def test_k4_complete():
    L = lattice_of(complete(4, 3))
    assert is_complete(L, 3)
    for v, u in itertools.permutations(range(4), 2):
        assert contains(L, transferral(v, u, 4))


def test_c7_complete_lattice():
    # connected and aperiodic, so the lattice is complete
    L = lattice_of(tight_cycle(7, 3))
    assert is_complete(L, 3)


def test_completeness_equivalence():
    # is_complete iff every transferral is contained (edge vector given)
    for seed in range(20):
        G = random_graph(6, 3, 0.4, seed=seed)
        if not G.edges:
            continue
        L = lattice_of(G)
        expect = all(contains(L, transferral(v, u, 6))
                     for v, u in itertools.combinations(range(6), 2))
        assert is_complete(L, 3) == expect
        if expect:
            # completeness really does give every k-divisible vector (spot check)
            assert contains(L, (3, 0, 0, 0, 0, 0))
            assert contains(L, (1, 1, 1, 0, 0, 0))


def test_dcon_dape_implies_complete():
    from tightcycle.connectivity import is_dape, is_dcon
    for seed in range(30):
        G = random_graph(6, 3, 0.5, seed=seed)
        D = aligned_closure(G)
        if not (is_dcon(D) and is_dape(D)):
            continue
        assert is_complete(lattice_of(D), 3)


def test_transferral_from_walk():
    D = aligned_closure(tight_cycle(7, 3))
    pairs = transferral_from_walk(D, 0, 1)
    total = [0] * 7
    for e, f in pairs:
        for v in e:
            total[v] += 1
        for v in f:
            total[v] -= 1
    expect = [0] * 7
    expect[1] += 1
    expect[0] -= 1
    assert total == expect
    for e, f in pairs:
        assert e in D.edges and f in D.edges


def test_transferral_from_walk_trivial_and_errors():
    D = aligned_closure(tight_cycle(7, 3))
    assert transferral_from_walk(D, 3, 3) == []
    D6 = orientation_closure(with_shadow(tight_cycle(6, 3)))
    with pytest.raises(PreconditionError):
        transferral_from_walk(D6, 0, 1)


def test_bounded_decomposition_simple():
    G = tight_cycle(5, 3)
    e = G.edge_list()[0]
    b = list(indicator(e, 5))
    out = bounded_decomposition(G, b, q_max=2)
    assert out == {e: 1}
    assert bounded_decomposition(G, [0] * 5, q_max=2) == {}


def test_bounded_decomposition_combination():
    G = tight_cycle(5, 3)
    b = [0] * 5
    for v in (0, 1, 2):
        b[v] += 2
    for v in (1, 2, 3):
        b[v] -= 1
    out = bounded_decomposition(G, b, q_max=2)
    total = [0] * 5
    for e, c in out.items():
        for v in e:
            total[v] += c
    assert total == b
    assert all(abs(c) <= 2 for c in out.values())


def test_bounded_decomposition_matches_bruteforce():
    G = random_graph(6, 3, 0.5, seed=4)
    L = lattice_of(G)
    vectors = sorted({indicator(e, 6) for e in G.edges})
    import random
    rng = random.Random(0)
    edges = G.edge_list()
    for _ in range(10):
        coeffs = [rng.randint(-2, 2) for _ in vectors]
        b = [0] * 6
        for c, vec in zip(coeffs, vectors):
            for i in range(6):
                b[i] += c * vec[i]
        out = bounded_decomposition(G, b, q_max=4)
        total = [0] * 6
        for e, c in out.items():
            for v in e:
                total[v] += c
        assert total == b


def test_bounded_decomposition_rejects_bad_sum():
    G = tight_cycle(5, 3)
    with pytest.raises(InputError):
        bounded_decomposition(G, [1, 0, 0, 0, 0], q_max=2)


def test_bounded_decomposition_outside_lattice():
    G = build(3, 3, [(0, 1, 2)])
    with pytest.raises(PreconditionError):
        bounded_decomposition(G, [3, 0, 0], q_max=3)
