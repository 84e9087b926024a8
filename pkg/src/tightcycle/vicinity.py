"""Link vicinities, generated subgraphs, switchers, arcs, the dense
link-graph checker, and the clique-power pipeline check."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .connectivity import powers_odd_walk, powers_threshold, tight_components
from .core import Hypergraph, clique_graph, link, min_degree, shadow
from .errors import InputError, PreconditionError
from .fractional import max_fractional_matching, maximum_matching_size


@dataclass(frozen=True)
class Vicinity:
    """Assignment of a link subgraph to every d-set of vertices."""

    d: int
    assignment: dict  # d-tuple -> frozenset of link edges (original labels)

    def subgraph(self, S):
        return self.assignment.get(tuple(sorted(S)), frozenset())


def natural_vicinity(G: Hypergraph, d) -> Vicinity:
    """Per d-set, the tight component of its link with the most edges.

    Empty links get an empty assignment.  Ties break on the smallest sorted
    edge list, so the output is deterministic.
    """
    if not 1 <= d < G.k:
        raise InputError("need 1 <= d < k")
    ell = G.k - d
    assignment = {}
    for S in itertools.combinations(range(G.n), d):
        L = link(G, S)
        if not L.edges:
            assignment[S] = frozenset()
            continue
        if ell == 1:
            assignment[S] = frozenset(L.edges)
            continue
        cp = tight_components(L)
        best = max(cp.blocks, key=lambda b: (len(b), [-x for e in sorted(b) for x in e]))
        # tie-break: most edges, then lexicographically smallest edge set
        candidates = [b for b in cp.blocks if len(b) == len(best)]
        best = min(candidates, key=lambda b: sorted(b))
        assignment[S] = frozenset(best)
    return Vicinity(d=d, assignment=assignment)


def generated_subgraph(G: Hypergraph, V: Vicinity) -> Hypergraph:
    """Edges S + X over all d-sets S and X in the assigned link subgraph."""
    edges = set()
    for S, block in V.assignment.items():
        for X in block:
            e = tuple(sorted(set(S) | set(X)))
            if len(e) == G.k:
                edges.add(e)
    out = Hypergraph(G.n, G.k, frozenset(edges))
    if not out.edges <= G.edges:
        raise PreconditionError("vicinity is not over this host")
    return out


def find_switcher(L: Hypergraph):
    """First edge A and center a such that A-a and A-b share a neighbour for
    every b in A; None when no switcher exists."""
    for A in L.edge_list():
        for a in A:
            if _is_switcher(L, A, a):
                return A, a
    return None


def _is_switcher(L, A, a):
    Aset = set(A)
    base = Aset - {a}
    for b in A:
        other = Aset - {b}
        ok = False
        for y in range(L.n):
            if y in Aset:
                continue
            if L.has_edge(base | {y}) and L.has_edge(other | {y}):
                ok = True
                break
        if not ok:
            return False
    return True


def find_arc(G: Hypergraph, V: Vicinity):
    """Tuple (v_1..v_{k+1}) whose two shifted windows belong to the assigned
    vicinities; None when no arc exists."""
    k, d = G.k, V.d
    for tup in itertools.permutations(range(G.n), k + 1):
        head = tuple(sorted(tup[:d]))
        mid = frozenset(tup[d:k])
        if tuple(sorted(mid)) not in {tuple(sorted(e)) for e in V.assignment.get(head, ())}:
            continue
        head2 = tuple(sorted(tup[1:d + 1]))
        tail = frozenset(tup[d + 1:k + 1])
        if tuple(sorted(tail)) in {tuple(sorted(e)) for e in V.assignment.get(head2, ())}:
            return tup
    return None


def cooley_mycroft_check(L: Hypergraph, L2: Hypergraph | None, eps) -> dict:
    """Dense 2-graph claims for the maximum-edge component: edge count,
    matching of size n/3, a triangle, and a common edge with a second graph."""
    if L.k != 2:
        raise InputError("checker expects 2-graphs")
    n = L.n
    eps = Fraction(eps)
    if Fraction(len(L.edges)) < (Fraction(5, 9) + eps) * comb(n, 2):
        raise PreconditionError("first graph below the density hypothesis")
    C = _max_edge_component(L)
    report = {"component": C}
    report["edge_density"] = {
        "holds": Fraction(len(C)) > Fraction(4, 9) * comb(n, 2),
        "edges": len(C)}
    msize = maximum_matching_size(Hypergraph(n, 2, C))
    report["matching"] = {"holds": Fraction(msize) >= Fraction(n, 3),
                          "size": msize}
    tri = _find_triangle(C)
    report["triangle"] = {"holds": tri is not None, "witness": tri}
    if L2 is not None:
        if L2.n != n or L2.k != 2:
            raise InputError("second graph must match the first")
        if Fraction(len(L2.edges)) < Fraction(5, 9) * comb(n, 2):
            raise PreconditionError("second graph below the density hypothesis")
        C2 = _max_edge_component(L2)
        common = sorted(C & C2)
        report["common_edge"] = {"holds": bool(common),
                                 "witness": common[0] if common else None}
    return report


def _max_edge_component(L: Hypergraph):
    cp = tight_components(L)
    best = max(len(b) for b in cp.blocks) if cp.blocks else 0
    if best == 0:
        return frozenset()
    return min((b for b in cp.blocks if len(b) == best), key=lambda b: sorted(b))


def _find_triangle(edges):
    adj = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    for a, b in sorted(edges):
        common = adj[a] & adj[b]
        if common:
            return (a, b, min(common))
    return None


def powers_framework_check(G: Hypergraph, t, eps=Fraction(1, 100)) -> dict:
    """Connectivity, odd walk, and perfect fractional matching of the
    t-clique-graph, under the codegree gates."""
    K = clique_graph(G, t)
    if not K.edges:
        raise PreconditionError("clique graph is empty")
    deg = min_degree(G, G.k - 1).minimum if G.k >= 2 else len(G.edges)
    gate_walk = Fraction(deg) > powers_threshold(G.k, t) * G.n
    gate_matching = Fraction(deg) >= (1 - Fraction(1, comb(t - 1, G.k - 1)) + eps) * G.n
    report = {"walk_gate": gate_walk, "matching_gate": gate_matching}
    cp = tight_components(K)
    covered = K.covered_vertices()
    report["connected"] = {"holds": len(cp.blocks) == 1 and covered == set(range(K.n)),
                           "components": len(cp.blocks)}
    try:
        w = powers_odd_walk(G, t)
        report["odd_walk"] = {"holds": w.order % t == (t - 1) % t, "walk": w}
    except PreconditionError as exc:
        report["odd_walk"] = {"holds": False, "error": str(exc)}
    m = max_fractional_matching(K)
    report["matching"] = {"holds": m.size == Fraction(K.n, t), "weighting": m}
    return report
