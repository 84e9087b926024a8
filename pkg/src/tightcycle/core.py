"""Hypergraph and directed-hypergraph data types, degrees, and generators.

Vertices are dense integers 0..n-1.  Undirected edges are stored as sorted
tuples, directed edges as plain tuples; edge sets are frozensets so graphs
are immutable values.  All relative quantities are exact Fractions.
"""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .errors import InputError


def _check_vertex_range(vertices, n):
    for v in vertices:
        if not isinstance(v, int) or not 0 <= v < n:
            raise InputError(f"vertex {v!r} out of range 0..{n - 1}")


@dataclass(frozen=True)
class Hypergraph:
    """k-uniform hypergraph on vertex set {0..n-1}."""

    n: int
    k: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.k < 1:
            raise InputError("uniformity k must be >= 1")
        canon = set()
        for e in self.edges:
            t = tuple(sorted(e))
            if len(set(t)) != len(t):
                raise InputError(f"edge {e!r} repeats a vertex")
            if len(t) != self.k:
                raise InputError(f"edge {e!r} has arity {len(t)}, expected {self.k}")
            _check_vertex_range(t, self.n)
            if t in canon:
                raise InputError(f"duplicate edge {t!r} after canonicalization")
            canon.add(t)
        object.__setattr__(self, "edges", frozenset(canon))

    @property
    def vertices(self):
        return range(self.n)

    def edge_list(self):
        return sorted(self.edges)

    def has_edge(self, e):
        return tuple(sorted(e)) in self.edges

    def degree(self, S):
        S = frozenset(S)
        return sum(1 for e in self.edges if S <= set(e))

    def covered_vertices(self):
        out = set()
        for e in self.edges:
            out.update(e)
        return out

    def induced(self, S):
        """Induced subgraph on S, relabelled to 0..|S|-1 (sorted order)."""
        order = sorted(S)
        pos = {v: i for i, v in enumerate(order)}
        sub = {tuple(sorted(pos[v] for v in e)) for e in self.edges if set(e) <= set(order)}
        return Hypergraph(len(order), self.k, frozenset(sub))

    def remove_vertices(self, X):
        """Subgraph on the same labels with edges touching X dropped."""
        X = set(X)
        return Hypergraph(self.n, self.k,
                          frozenset(e for e in self.edges if not X & set(e)))


@dataclass(frozen=True)
class BoundedHypergraph:
    """Hypergraph with edges of every arity 1..k ("k-bounded")."""

    n: int
    k: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.k < 1:
            raise InputError("bound k must be >= 1")
        canon = set()
        for e in self.edges:
            t = tuple(sorted(e))
            if len(set(t)) != len(t):
                raise InputError(f"edge {e!r} repeats a vertex")
            if not 1 <= len(t) <= self.k:
                raise InputError(f"edge {e!r} has arity {len(t)}, expected 1..{self.k}")
            _check_vertex_range(t, self.n)
            if t in canon:
                raise InputError(f"duplicate edge {t!r}")
            canon.add(t)
        object.__setattr__(self, "edges", frozenset(canon))

    @property
    def vertices(self):
        return range(self.n)

    def layer(self, i):
        """The i-uniform layer as a Hypergraph."""
        return Hypergraph(self.n, i, frozenset(e for e in self.edges if len(e) == i))

    def edge_list(self):
        return sorted(self.edges, key=lambda e: (len(e), e))

    def induced(self, S):
        order = sorted(S)
        pos = {v: i for i, v in enumerate(order)}
        sub = {tuple(sorted(pos[v] for v in e)) for e in self.edges if set(e) <= set(order)}
        return BoundedHypergraph(len(order), self.k, frozenset(sub))


@dataclass(frozen=True)
class BoundedDigraph:
    """k-bounded directed hypergraph; edges are ordered tuples, arity 1..k."""

    n: int
    k: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        canon = set()
        for e in self.edges:
            t = tuple(e)
            if len(set(t)) != len(t):
                raise InputError(f"directed edge {e!r} repeats a vertex")
            if not 1 <= len(t) <= self.k:
                raise InputError(f"directed edge {e!r} has arity {len(t)}, expected 1..{self.k}")
            _check_vertex_range(t, self.n)
            if t in canon:
                raise InputError(f"duplicate directed edge {t!r}")
            canon.add(t)
        object.__setattr__(self, "edges", frozenset(canon))

    @property
    def vertices(self):
        return range(self.n)

    def layer(self, i):
        """The arity-i layer as a frozenset of tuples."""
        return frozenset(e for e in self.edges if len(e) == i)

    def edge_list(self):
        return sorted(self.edges, key=lambda e: (len(e), e))

    def underlying(self, i=None):
        """Unordered i-graph of the arity-i layer (default i=k)."""
        i = self.k if i is None else i
        return Hypergraph(self.n, i,
                          frozenset(tuple(sorted(e)) for e in self.layer(i)))

    def induced(self, S, relabel=True):
        order = sorted(S)
        keep = set(order)
        if relabel:
            pos = {v: i for i, v in enumerate(order)}
            sub = {tuple(pos[v] for v in e) for e in self.edges if set(e) <= keep}
            return BoundedDigraph(len(order), self.k, frozenset(sub))
        return BoundedDigraph(self.n, self.k,
                              frozenset(e for e in self.edges if set(e) <= keep))

    def remove_vertices(self, X):
        X = set(X)
        return BoundedDigraph(self.n, self.k,
                              frozenset(e for e in self.edges if not X & set(e)))


def is_shift_closed(D: BoundedDigraph) -> bool:
    """True iff every cyclic shift of every k-edge is present."""
    kl = D.layer(D.k)
    for e in kl:
        if tuple(e[1:]) + (e[0],) not in kl:
            return False
    return True


@dataclass(frozen=True)
class DegreeProfile:
    """Exact d-degree statistics of a k-uniform hypergraph."""

    d: int
    degrees: dict
    minimum: int
    relative: Fraction

    def __post_init__(self):
        if self.degrees and self.minimum != min(self.degrees.values()):
            raise InputError("minimum does not match stored counts")


def build(n, k, edges) -> Hypergraph:
    return Hypergraph(n, k, frozenset(tuple(sorted(e)) for e in edges))


def shadow(G: Hypergraph) -> Hypergraph:
    """(k-1)-graph of the (k-1)-sets contained in an edge."""
    if G.k < 2:
        raise InputError("shadow requires k >= 2")
    sh = set()
    for e in G.edges:
        for f in itertools.combinations(e, G.k - 1):
            sh.add(f)
    return Hypergraph(G.n, G.k - 1, frozenset(sh))


def link(G: Hypergraph, S) -> Hypergraph:
    """Link (k-d)-graph of the d-set S: edges X with X + S an edge of G.

    Vertex labels are kept; vertices of S are simply isolated in the result.
    """
    S = frozenset(S)
    d = len(S)
    if d >= G.k:
        raise InputError("link requires |S| < k")
    if not all(0 <= v < G.n for v in S):
        raise InputError("link set not inside the vertex set")
    out = set()
    for e in G.edges:
        if S <= set(e):
            out.add(tuple(sorted(set(e) - S)))
    return Hypergraph(G.n, G.k - d, frozenset(out))


def clique_graph(G: Hypergraph, t) -> Hypergraph:
    """t-graph whose edges are the t-sets inducing cliques in G."""
    if t < G.k:
        raise InputError("clique graph requires t >= k")
    out = set()
    for T in itertools.combinations(range(G.n), t):
        if all(G.has_edge(f) for f in itertools.combinations(T, G.k)):
            out.add(T)
    return Hypergraph(G.n, t, frozenset(out))


def orientation_closure(G) -> BoundedDigraph:
    """Digraph holding every permutation of every edge of G."""
    if isinstance(G, Hypergraph):
        edges, k = G.edges, G.k
    elif isinstance(G, BoundedHypergraph):
        edges, k = G.edges, G.k
    else:
        raise InputError("orientation closure expects an undirected (bounded) hypergraph")
    out = set()
    for e in edges:
        for p in itertools.permutations(e):
            out.add(p)
    return BoundedDigraph(G.n, k, frozenset(out))


def with_shadow(G: Hypergraph) -> BoundedHypergraph:
    """G together with its shadow, as a k-bounded hypergraph."""
    return BoundedHypergraph(G.n, G.k, frozenset(G.edges | shadow(G).edges))


def min_degree(G: Hypergraph, d) -> DegreeProfile:
    """Exact minimum d-degree profile over all d-sets of vertices."""
    if not 1 <= d < G.k:
        raise InputError("degree type must satisfy 1 <= d < k")
    degrees = {S: 0 for S in itertools.combinations(range(G.n), d)}
    for e in G.edges:
        for S in itertools.combinations(e, d):
            degrees[S] += 1
    minimum = min(degrees.values()) if degrees else 0
    denom = comb(G.n - d, G.k - d)
    rel = Fraction(minimum, denom) if denom else Fraction(0)
    return DegreeProfile(d=d, degrees=degrees, minimum=minimum, relative=rel)


def complete(n, k) -> Hypergraph:
    return Hypergraph(n, k, frozenset(itertools.combinations(range(n), k)))


def tight_cycle(n, k) -> Hypergraph:
    """Cycle whose edges are all windows of k cyclically consecutive vertices."""
    if n < k + 1:
        raise InputError("tight cycle requires n > k")
    edges = {tuple(sorted((i + j) % n for j in range(k))) for i in range(n)}
    return Hypergraph(n, k, frozenset(edges))


def tight_path(n, k) -> Hypergraph:
    if n < k:
        raise InputError("tight path requires n >= k")
    edges = {tuple(range(i, i + k)) for i in range(n - k + 1)}
    return Hypergraph(n, k, frozenset(edges))


def random_graph(n, k, p, seed) -> Hypergraph:
    """Include every k-set independently with probability p (seeded)."""
    rng = _random.Random(seed)
    edges = {e for e in itertools.combinations(range(n), k) if rng.random() < p}
    return Hypergraph(n, k, frozenset(edges))


def han_zhao_valid_j(k, d):
    """The j values permitted for the split construction at degree type d."""
    ell = k - d
    ratio = Fraction(-(-ell // 2), ell + 1)  # ceil(l/2)/(l+1)
    return [j for j in range(k + 1)
            if Fraction(j - 1, k) < ratio < Fraction(j + 1, k)]


def han_zhao(n, k, d, j):
    """Split construction: edges are the k-sets S with |S & X| != j.

    Returns (G, X) where X = {0..m-1} with m = floor(ceil(l/2) * n/(l+1)),
    l = k - d.  X is the certificate for extremality checks.
    """
    valid = han_zhao_valid_j(k, d)
    if j not in valid:
        raise InputError(f"j={j} invalid for (k,d)=({k},{d}); valid: {valid}")
    ell = k - d
    m = (-(-ell // 2) * n) // (ell + 1)
    X = frozenset(range(m))
    edges = {e for e in itertools.combinations(range(n), k)
             if len(X & set(e)) != j}
    return Hypergraph(n, k, frozenset(edges)), X


_GENERATORS = {
    "complete": lambda n, k: complete(n, k),
    "tight_cycle": lambda n, k: tight_cycle(n, k),
    "tight_path": lambda n, k: tight_path(n, k),
    "random": lambda n, k, p, seed: random_graph(n, k, p, seed),
    "han_zhao": lambda n, k, d, j: han_zhao(n, k, d, j),
}


def generate(name, *args, **kwargs):
    """Dispatch to a named generator: complete, tight_cycle, tight_path,
    random(n,k,p,seed), han_zhao(n,k,d,j)."""
    if name not in _GENERATORS:
        raise InputError(f"unknown generator {name!r}")
    return _GENERATORS[name](*args, **kwargs)


# -- plain text serialization ------------------------------------------------
#
# Header `n=<n> k=<k> directed=<0|1>` followed by one edge per line as
# space-separated vertices.  Vertex order within a line is significant
# exactly when directed=1.

def serialize(G) -> str:
    directed = 1 if isinstance(G, BoundedDigraph) else 0
    lines = [f"n={G.n} k={G.k} directed={directed}"]
    for e in G.edge_list():
        lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def parse(text: str):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty graph text")
    try:
        head = dict(part.split("=", 1) for part in lines[0].split())
        n, k, directed = int(head["n"]), int(head["k"]), int(head["directed"])
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad header line {lines[0]!r}") from exc
    edges = []
    for ln in lines[1:]:
        edges.append(tuple(int(tok) for tok in ln.split()))
    if directed:
        return BoundedDigraph(n, k, frozenset(edges))
    if all(len(e) == k for e in edges):
        return Hypergraph(n, k, frozenset(tuple(sorted(e)) for e in edges))
    return BoundedHypergraph(n, k, frozenset(tuple(sorted(e)) for e in edges))


def orientation_count(k):
    return factorial(k)
