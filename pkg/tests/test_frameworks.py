import itertools
from fractions import Fraction
from math import comb

import pytest

from tightcycle.connectivity import aligned_closure
from tightcycle.core import (BoundedDigraph, Hypergraph, build, complete,
                             han_zhao, orientation_closure, random_graph,
                             tight_cycle, with_shadow)
from tightcycle.errors import InputError, PreconditionError
from tightcycle.frameworks import (Predicate, ThresholdRegistry,
                                   check_framework,
                                   compare_geq_one_minus_exp_neg_sqrt,
                                   conjunction, degseq_member, del_q,
                                   inheritance_estimate, parse_predicate,
                                   property_graph, robustness, verify_booster)


HAS_EDGE = Predicate("hasedge", lambda sub: bool(sub.edges))


def test_registry_exact_values():
    assert ThresholdRegistry.hamilton_framework(1) == Fraction(1, 2)
    assert ThresholdRegistry.hamilton_framework(2) == Fraction(5, 9)
    assert ThresholdRegistry.hamilton_framework(3) == Fraction(5, 8)
    assert ThresholdRegistry.clique_walk(2, 3) == Fraction(2, 3)
    assert ThresholdRegistry.clique_walk(3, 4) == Fraction(4, 5)
    assert ThresholdRegistry.matching_upper(4) == Fraction(3, 4)


def test_property_graph_complete():
    PG = property_graph(complete(6, 3), HAS_EDGE, 4)
    assert len(PG.edges) == comb(6, 4)


def test_property_graph_empty_host():
    PG = property_graph(Hypergraph(6, 3), HAS_EDGE, 4)
    assert not PG.edges


def test_property_graph_exact_reevaluation():
    G, _ = han_zhao(8, 3, 2, j=1)
    P = parse_predicate("connected")
    PG = property_graph(G, P, 5)
    for S in PG.edges:
        assert P(G.induced(S))
    for S in itertools.combinations(range(8), 5):
        if S not in PG.edges:
            assert not P(G.induced(S))


def test_property_graph_sampled_reproducible():
    G = random_graph(10, 3, 0.5, seed=1)
    a = property_graph(G, HAS_EDGE, 5, mode="sampled", seed=9, count=50)
    b = property_graph(G, HAS_EDGE, 5, mode="sampled", seed=9, count=50)
    assert a.samples == b.samples


def test_robustness_complete_and_empty():
    rep = robustness(complete(7, 3), HAS_EDGE, 5, r=2)
    assert rep.verdict is True
    assert rep.min_r_degree == comb(5, 3)
    rep0 = robustness(Hypergraph(7, 3), HAS_EDGE, 5, r=2)
    assert rep0.min_r_degree == 0 and rep0.verdict is False


def test_robustness_monotone_in_delta():
    G = random_graph(8, 3, 0.7, seed=0)
    r1 = robustness(G, HAS_EDGE, 5, r=2, delta=Fraction(1, 10))
    r2 = robustness(G, HAS_EDGE, 5, r=2, delta=Fraction(9, 10))
    if r2.verdict:
        assert r1.verdict


def test_robustness_requires_r_below_s():
    with pytest.raises(InputError):
        robustness(complete(6, 3), HAS_EDGE, 4, r=4)


def test_del_q_zero_identity():
    P = parse_predicate("connected")
    Q = del_q(P, 0)
    for seed in range(5):
        G = random_graph(7, 3, 0.5, seed=seed)
        assert P(G) == Q(G)


def test_del_q_complete_graph():
    q = 2
    G = complete(3 + q + 1, 3)
    assert del_q(HAS_EDGE, q)(G)


def test_del_q_tight_cycle_deletion():
    # deleting any vertex of a tight cycle leaves a tight path: connected
    P = parse_predicate("connected")
    G = tight_cycle(7, 3)
    for v in range(7):
        rest = [u for u in range(7) if u != v]
        assert P(G.induced(rest))
    assert del_q(P, 1)(G)


def test_del_q_nested():
    P = parse_predicate("connected")
    G = random_graph(8, 3, 0.8, seed=3)
    if del_q(P, 2)(G):
        assert del_q(P, 1)(G)


def test_predicate_parser():
    assert parse_predicate("dcon").ident == "dcon"
    p = parse_predicate("and(dcon,dape)")
    assert p.ident == "and(dcon,dape)"
    q = parse_predicate("delq:q=1(connected)")
    assert q.ident == "delq:q=1(connected)"
    m = parse_predicate("mindeg:d=2,delta=5/9")
    assert m(complete(6, 3))
    with pytest.raises(InputError):
        parse_predicate("bogus")


def test_directed_predicates_on_closures():
    D = aligned_closure(complete(6, 3))
    assert parse_predicate("and(dcon,dspa,dape)")(D)


def test_check_framework_identity_complete():
    selector = lambda H: H
    rep = check_framework(selector, complete(7, 3))
    assert rep["F1"]["holds"] and rep["F2"]["holds"] and rep["F3"]["holds"]
    w = rep["F3"]["walk"]
    assert w.validate(complete(7, 3)) and w.order % 3 == 1


def test_check_framework_han_zhao_space_fails():
    G, _ = han_zhao(6, 3, 2, j=1)
    rep = check_framework(lambda H: H, G)
    assert not rep["F2"]["holds"]
    assert rep["F2"]["matching"].size < Fraction(2)


def test_check_framework_consistency():
    J = complete(8, 3)
    rep = check_framework(lambda H: H, complete(7, 3), consistency=(J, 0, 1))
    assert rep["F4"]["holds"]


def test_check_framework_rejects_non_subgraph():
    with pytest.raises(InputError):
        check_framework(lambda H: complete(H.n, H.k), tight_cycle(7, 3))


def test_interval_comparison():
    # 1 - exp(-sqrt(4)) = 0.8646...
    assert compare_geq_one_minus_exp_neg_sqrt(Fraction(9, 10), 4) is True
    assert compare_geq_one_minus_exp_neg_sqrt(Fraction(1, 2), 4) is False


def test_verify_booster_small():
    D = aligned_closure(complete(9, 3))
    rep = verify_booster(D, s1=5, r2=1, s2=7, q=1)
    assert rep["implication_held"]


def test_verify_booster_vacuous():
    G = build(6, 3, [(0, 1, 2)])
    D = orientation_closure(with_shadow(G))
    rep = verify_booster(D, s1=5, r2=1, s2=6, q=1)
    assert rep["implication_held"]
    assert rep.get("note") == "hypothesis false, implication vacuous"


def test_inheritance_complete_and_empty():
    rep = inheritance_estimate(complete(10, 3), d=1, delta=Fraction(1, 2),
                               eps=Fraction(1, 10), s=7, samples=40, seed=1)
    assert rep.fraction == 1.0
    rep0 = inheritance_estimate(Hypergraph(10, 3), d=1, delta=Fraction(1, 2),
                                eps=Fraction(1, 10), s=7, samples=40, seed=1)
    assert rep0.fraction == 0.0


def test_inheritance_sampled_contains_exact():
    G = random_graph(12, 3, 0.7, seed=5)
    rep = inheritance_estimate(G, d=1, delta=Fraction(3, 5), eps=Fraction(1, 10),
                               s=7, samples=300, seed=2, r=2, exact=True)
    assert rep.contains_exact()


def test_degseq_member():
    n, t = 12, 3
    K = complete(n, 2)
    assert degseq_member(K, t, Fraction(1, 100))
    assert not degseq_member(Hypergraph(n, 2), t, Fraction(1, 100))


def test_degseq_member_deterministic():
    G = random_graph(60, 2, 0.95, seed=8)
    assert degseq_member(G, 3, Fraction(1, 100)) == degseq_member(G, 3, Fraction(1, 100))
