"""Integer edge lattices, transferrals, and bounded decompositions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .connectivity import Automaton, is_dape, is_dcon, oriented_arcs
from .core import BoundedDigraph, Hypergraph
from .errors import InputError, PreconditionError


def indicator(edge, n):
    v = [0] * n
    for x in edge:
        v[x] += 1
    return tuple(v)


def transferral(v, u, n):
    vec = [0] * n
    vec[v] += 1
    vec[u] -= 1
    return tuple(vec)


def _row_reduce(vectors, n):
    """Integer row echelon basis (HNF): increasing pivots, positive pivot
    entries, entries above each pivot reduced into [0, pivot)."""
    basis = []  # rows kept sorted by pivot column

    def insert(vec):
        vec = list(vec)
        for row in basis:
            c = next(i for i, x in enumerate(row) if x)
            if vec[c]:
                q = vec[c] // row[c]
                if q:
                    for i in range(n):
                        vec[i] -= q * row[i]
        while any(vec):
            c = next(i for i, x in enumerate(vec) if x)
            conflict = None
            for row in basis:
                rc = next(i for i, x in enumerate(row) if x)
                if rc == c:
                    conflict = row
                    break
            if conflict is None:
                if vec[c] < 0:
                    vec = [-x for x in vec]
                basis.append(list(vec))
                basis.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
                return
            a, b = conflict[c], vec[c]
            g, p, q = _xgcd(a, b)
            new_row = [p * conflict[i] + q * vec[i] for i in range(n)]
            new_vec = [(a // g) * vec[i] - (b // g) * conflict[i] for i in range(n)]
            conflict[:] = new_row
            vec = new_vec

    for v in vectors:
        insert(v)
    # normalize: reduce entries above each pivot
    basis.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    for j in range(len(basis) - 1, -1, -1):
        row = basis[j]
        c = next(i for i, x in enumerate(row) if x)
        for upper in basis[:j]:
            q = upper[c] // row[c]
            if q:
                for i in range(n):
                    upper[i] -= q * row[i]
    return [tuple(r) for r in basis]


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class EdgeLattice:
    """Integer lattice spanned by edge indicator vectors, in normal form."""

    n: int
    generators: tuple
    basis: tuple

    def contains(self, b) -> bool:
        b = list(b)
        if len(b) != self.n:
            raise InputError("vector dimension mismatch")
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            if b[c] % row[c]:
                return False
            q = b[c] // row[c]
            if q:
                for i in range(self.n):
                    b[i] -= q * row[i]
        return not any(b)


def _distinct_edge_vectors(D):
    """Distinct indicator vectors of the k-edges, with a representative edge."""
    if isinstance(D, BoundedDigraph):
        edges = sorted(D.layer(D.k))
        n = D.n
    elif isinstance(D, Hypergraph):
        edges = D.edge_list()
        n = D.n
    else:
        raise InputError("expected a hypergraph or bounded digraph")
    reps = {}
    for e in edges:
        vec = indicator(e, n)
        if vec not in reps:
            reps[vec] = e
    return reps, n


def lattice_of(D) -> EdgeLattice:
    """Lattice generated by the indicator vectors of the k-edges."""
    reps, n = _distinct_edge_vectors(D)
    if not reps:
        raise PreconditionError("graph has no top-layer edges")
    gens = tuple(sorted(reps))
    return EdgeLattice(n=n, generators=gens, basis=tuple(_row_reduce(gens, n)))


def contains(L: EdgeLattice, b) -> bool:
    return L.contains(b)


def is_complete(L: EdgeLattice, k) -> bool:
    """True iff the lattice holds every vector with coordinate sum 0 mod k.

    By the transferral reduction it suffices that some edge vector is present
    (true by construction) and every transferral lies in the lattice.
    """
    for v, u in itertools.combinations(range(L.n), 2):
        if not L.contains(transferral(v, u, L.n)):
            return False
    return True


def transferral_from_walk(D: BoundedDigraph, u, v):
    """Consecutive-window pairs (e_i, f_i) with sum of (1_{e_i} - 1_{f_i})
    equal to 1_v - 1_u, extracted from a walk of order 1 mod k from v to u."""
    if u == v:
        return []
    if not (is_dcon(D) and is_dape(D)):
        raise PreconditionError("host must satisfy directed connectivity and aperiodicity")
    k = D.k
    walk = _walk_between_with_residue(D, v, u, 1 % k)
    if walk is None:
        raise PreconditionError(f"no walk of order 1 mod {k} from {v} to {u}")
    N = len(walk)
    ell = (N - 1) // k
    pairs = []
    for i in range(ell):
        e = tuple(walk[i * k:i * k + k])
        f = tuple(walk[i * k + 1:i * k + k + 1])
        pairs.append((e, f))
    return pairs


def _walk_between_with_residue(D: BoundedDigraph, v, u, residue):
    """Vertex sequence starting at v, ending at u, all k-windows edges,
    vertex count congruent to `residue` mod k."""
    k = D.k
    arcs = oriented_arcs(D)
    auto = Automaton(arcs, k)
    starts = sorted(a for a in arcs if a[0] == v)
    prev = {}
    from collections import deque
    dq = deque()
    for a in starts:
        node = (a, k % k)
        if node not in prev:
            prev[node] = None
            dq.append(node)
    while dq:
        node = dq.popleft()
        a, r = node
        if a[-1] == u and r == residue % k:
            path = [node]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            arcs_path = [p[0] for p in path[::-1]]
            vs = list(arcs_path[0])
            for b in arcs_path[1:]:
                vs.append(b[-1])
            return vs
        for b in auto.arc_successors(a):
            nxt = (b, (r + 1) % k)
            if nxt not in prev:
                prev[nxt] = node
                dq.append(nxt)
    return None


def bounded_decomposition(D, b, q_max=8):
    """Integer coefficients c_e with sum c_e 1_e = b and |c_e| <= q.

    Searches by iterative deepening on the coefficient bound.  Coefficients
    are per distinct indicator vector; the returned dict is keyed by a
    representative edge.
    """
    reps, n = _distinct_edge_vectors(D)
    if not reps:
        raise PreconditionError("graph has no top-layer edges")
    b = tuple(b)
    if len(b) != n:
        raise InputError("vector dimension mismatch")
    k = len(next(iter(reps.values())))
    if sum(b) % k:
        raise InputError(f"coordinate sum {sum(b)} not divisible by k={k}")
    lat = lattice_of(D)
    if not lat.contains(b):
        raise PreconditionError("vector is outside the edge lattice")
    vecs = sorted(reps)
    covers = [[i for i in range(n) if vec[i]] for vec in vecs]
    remaining_cover = []
    tail = [0] * n
    for j in range(len(vecs) - 1, -1, -1):
        for i in covers[j]:
            tail[i] += 1
        remaining_cover.append(tuple(tail))
    remaining_cover.reverse()

    def search(j, resid, q, budget):
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if j == len(vecs):
            return {} if not any(resid) else None
        rem = remaining_cover[j]
        for i in range(n):
            if abs(resid[i]) > q * rem[i]:
                return None
        order = sorted(range(-q, q + 1), key=abs)
        for c in order:
            nxt = list(resid)
            if c:
                vec = vecs[j]
                for i in covers[j]:
                    nxt[i] -= c * vec[i]
            sol = search(j + 1, nxt, q, budget)
            if sol is not None:
                if c:
                    sol[reps[vecs[j]]] = c
                return sol
        return None

    for q in range(q_max + 1):
        budget = [2_000_000]
        sol = search(0, list(b), q, budget)
        if sol is not None:
            return sol
    raise PreconditionError(f"no decomposition with coefficient bound {q_max}")
