"""Exact fractional matchings and covers, the directed space predicate,
link-graph lifting, blow-up matchings, and the Erdos-Gallai bound."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import networkx as nx

from .connectivity import adherence
from .core import BoundedDigraph, Hypergraph, link
from .errors import InfeasibleError, InputError, PreconditionError
from .simplex import solve_packing_fractions


@dataclass(frozen=True)
class FractionalWeighting:
    """Nonnegative rational weights on edges (matching) or vertices (cover)."""

    kind: str  # "matching" | "cover"
    weights: dict
    size: Fraction

    def __post_init__(self):
        if self.kind not in ("matching", "cover"):
            raise InputError(f"unknown weighting kind {self.kind!r}")

    def validate(self, G: Hypergraph, caps=None) -> bool:
        """Exact feasibility of the weighting against its defining inequalities."""
        if any(w < 0 for w in self.weights.values()):
            return False
        if sum(self.weights.values(), Fraction(0)) != self.size:
            return False
        if self.kind == "matching":
            load = {}
            for e, w in self.weights.items():
                if not G.has_edge(e):
                    return False
                for v in e:
                    load[v] = load.get(v, Fraction(0)) + w
            for v, tot in load.items():
                cap = Fraction(1) if caps is None else Fraction(caps[v])
                if tot > cap:
                    return False
            return True
        for e in G.edges:
            if sum(self.weights.get(v, Fraction(0)) for v in e) < 1:
                return False
        return True

    def serialize(self) -> str:
        lines = []
        for key in sorted(self.weights):
            w = self.weights[key]
            tok = ",".join(map(str, key)) if isinstance(key, tuple) else str(key)
            lines.append(f"{tok} {w.numerator}/{w.denominator}")
        return "\n".join(lines) + ("\n" if lines else "")


def parse_weighting(text: str, kind: str) -> FractionalWeighting:
    weights = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        tok, frac = ln.split()
        num, den = frac.split("/")
        key = tuple(int(t) for t in tok.split(",")) if "," in tok or kind == "matching" else int(tok)
        weights[key] = Fraction(int(num), int(den))
    return FractionalWeighting(kind, weights, sum(weights.values(), Fraction(0)))


def _matching_lp(G: Hypergraph, caps=None):
    edges = G.edge_list()
    columns = [list(e) for e in edges]
    caps = [1] * G.n if caps is None else list(caps)
    x, y, value = solve_packing_fractions(columns, caps)
    return edges, x, y, value


def max_fractional_matching(G: Hypergraph, caps=None) -> FractionalWeighting:
    """Optimal fractional matching with exact rational weights."""
    if not G.edges:
        return FractionalWeighting("matching", {}, Fraction(0))
    edges, x, _, value = _matching_lp(G, caps)
    weights = {e: w for e, w in zip(edges, x) if w != 0}
    return FractionalWeighting("matching", weights, value)


def min_fractional_cover(G: Hypergraph) -> FractionalWeighting:
    """Optimal fractional cover, read off the dual of the matching LP."""
    if not G.edges:
        return FractionalWeighting("cover", {}, Fraction(0))
    _, _, y, value = _matching_lp(G)
    weights = {v: w for v, w in enumerate(y) if w != 0}
    cover = FractionalWeighting("cover", weights, sum(weights.values(), Fraction(0)))
    assert cover.size == value and cover.validate(G)
    return cover


def has_perfect_fractional_matching(G: Hypergraph) -> bool:
    return max_fractional_matching(G).size == Fraction(G.n, G.k)


def is_dspa(D: BoundedDigraph) -> bool:
    """Perfect fractional matching of the unordered k-graph of the adherence."""
    if D.k < 2:
        return False
    adh = adherence(D)  # raises if not shift-closed
    if not adh:
        return False
    U = Hypergraph(D.n, D.k, frozenset(tuple(sorted(e)) for e in adh))
    return has_perfect_fractional_matching(U)


def is_uspa(C) -> bool:
    from .connectivity import undirected_adherence
    from .core import BoundedHypergraph
    if isinstance(C, Hypergraph):
        C = BoundedHypergraph(C.n, C.k, C.edges)
    adh = undirected_adherence(C)
    if not adh:
        return False
    return has_perfect_fractional_matching(Hypergraph(C.n, C.k, adh))


def lift_link_matchings(G: Hypergraph, d):
    """Perfect fractional matching of G assembled from link matchings.

    If some d-set link admits no fractional matching of size n/k, that d-set
    is returned instead.  The averaged lift is checked against its own
    post-condition; when uneven link loads break the per-vertex bound, the
    guaranteed matching is recovered by a direct solve.
    """
    if not 1 <= d < G.k:
        raise InputError("need 1 <= d < k")
    n = G.n
    target = Fraction(n, G.k)
    lifted = {}
    for S in itertools.combinations(range(n), d):
        L = link(G, S)
        m = max_fractional_matching(L)
        if m.size < target:
            return frozenset(S)
        scale = target / m.size
        for X, w in m.weights.items():
            e = tuple(sorted(set(X) | set(S)))
            lifted[e] = lifted.get(e, Fraction(0)) + w * scale
    lam = Fraction(1, comb(n, d))
    weights = {e: w * lam for e, w in lifted.items()}
    candidate = FractionalWeighting("matching", weights,
                                    sum(weights.values(), Fraction(0)))
    if candidate.size == target and candidate.validate(G):
        return candidate
    direct = max_fractional_matching(G)
    if direct.size != target:
        raise PreconditionError("link hypothesis held but host matching fell short")
    return direct


def blowup_complete_matching(B, eta) -> FractionalWeighting:
    """Perfect fractional matching of a blow-up of a complete k-graph on k+1
    vertices with (1 +/- eta)-balanced clusters."""
    R = B.reduced
    if isinstance(R, BoundedDigraph):
        R = R.underlying()
    k = R.k
    if R.n != k + 1 or len(R.edges) != k + 1:
        raise InputError("reduced graph must be the complete k-graph on k+1 vertices")
    sizes = [len(c) for c in B.family.clusters]
    lo, hi = min(sizes), max(sizes)
    if lo == 0 or Fraction(hi, lo) > Fraction(1 + eta) / Fraction(1 - eta):
        raise PreconditionError("clusters are not (1 +/- eta)m-balanced")
    edges = R.edge_list()
    columns = [list(e) for e in edges]
    x, _, value = solve_packing_fractions(columns, sizes)
    total = sum(sizes)
    if value != Fraction(total, k):
        raise InfeasibleError("blow-up matching LP is not perfect at these sizes")
    weights = {}
    clusters = [sorted(c) for c in B.family.clusters]
    for e, w in zip(edges, x):
        if w == 0:
            continue
        denom = 1
        for c in e:
            denom *= len(clusters[c])
        share = w / denom
        for combo in itertools.product(*(clusters[c] for c in e)):
            weights[tuple(sorted(combo))] = share
    return FractionalWeighting("matching", weights,
                               sum(weights.values(), Fraction(0)))


def erdos_gallai_bound(n, s) -> int:
    """Edge count above which an n-vertex 2-graph has a matching of size s."""
    if s > Fraction(n, 2):
        raise InputError("need s <= n/2")
    return max(comb(2 * s - 1, 2), comb(n, 2) - comb(n - s + 1, 2))


def maximum_matching_size(L: Hypergraph) -> int:
    """Exact maximum matching in a 2-graph (blossom algorithm)."""
    if L.k != 2:
        raise InputError("exact maximum matching implemented for 2-graphs")
    g = nx.Graph()
    g.add_nodes_from(range(L.n))
    g.add_edges_from(L.edges)
    return len(nx.max_weight_matching(g, maxcardinality=True))


def check_matching(L: Hypergraph, s) -> bool:
    """True iff L has a matching with >= s edges (exact); asserts the
    Erdos-Gallai guarantee whenever the edge count clears the bound."""
    if s > Fraction(L.n, 2):
        raise InputError("need s <= n/2")
    size = maximum_matching_size(L)
    if len(L.edges) > erdos_gallai_bound(L.n, s):
        assert size >= s, "extremal bound violated; matching search is wrong"
    return size >= s
