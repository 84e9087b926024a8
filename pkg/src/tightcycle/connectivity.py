"""Tight walks, components, adherence, residue analysis, and walk lemmas.

Walk searches run on the shift automaton: states are ordered (k-1)-windows,
arcs are oriented k-windows, and appending one vertex advances the state.
A closed walk of order m is a closed directed walk of m arcs; its vertex
sequence lists the first coordinate of each arc in order.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .core import (BoundedDigraph, BoundedHypergraph, Hypergraph,
                   is_shift_closed, orientation_closure, shadow)
from .errors import InputError, PreconditionError


@dataclass(frozen=True)
class Walk:
    """Vertex sequence whose k-windows (cyclic if closed) are host edges."""

    vertices: tuple
    closed: bool

    @property
    def order(self):
        return len(self.vertices)

    def windows(self, k):
        v = self.vertices
        if self.closed:
            return [tuple(v[(i + j) % len(v)] for j in range(k)) for i in range(len(v))]
        return [tuple(v[i:i + k]) for i in range(len(v) - k + 1)]

    def validate(self, host) -> bool:
        k = host.k
        if self.order < k:
            return False
        for w in self.windows(k):
            if len(set(w)) != len(w):
                return False
            if isinstance(host, BoundedDigraph):
                if w not in host.edges:
                    return False
            elif not host.has_edge(w):
                return False
        return True

    def serialize(self):
        return f"closed={1 if self.closed else 0} " + " ".join(map(str, self.vertices))


def parse_walk(text: str) -> Walk:
    toks = text.split()
    if not toks or not toks[0].startswith("closed="):
        raise InputError(f"bad walk line {text!r}")
    return Walk(tuple(int(t) for t in toks[1:]), closed=toks[0] == "closed=1")


@dataclass(frozen=True)
class ComponentPartition:
    blocks: tuple  # tuple of frozensets of edges
    index: dict    # edge -> block id


# -- automaton ---------------------------------------------------------------

def oriented_arcs(host):
    """All oriented k-windows of the host as tuples."""
    if isinstance(host, BoundedDigraph):
        return set(host.layer(host.k))
    edges = host.edges if isinstance(host, Hypergraph) else host.layer(host.k).edges
    arcs = set()
    for e in edges:
        arcs.update(itertools.permutations(e))
    return arcs


class Automaton:
    """Shift automaton over a fixed arc set (oriented k-windows)."""

    def __init__(self, arcs, k):
        self.k = k
        self.arcs = set(arcs)
        self.succ = defaultdict(list)  # state -> sorted arcs leaving it
        for a in self.arcs:
            self.succ[a[:-1]].append(a)
        for s in self.succ:
            self.succ[s].sort()

    def arc_successors(self, a):
        return self.succ.get(a[1:], ())

    def arc_sccs(self):
        """Strongly connected components of the arc graph, iterative Tarjan."""
        index, low, onstack = {}, {}, {}
        stack, sccs = [], []
        counter = itertools.count()
        for root in sorted(self.arcs):
            if root in index:
                continue
            work = [(root, iter(self.arc_successors(root)))]
            index[root] = low[root] = next(counter)
            stack.append(root)
            onstack[root] = True
            while work:
                a, it = work[-1]
                advanced = False
                for b in it:
                    if b not in index:
                        index[b] = low[b] = next(counter)
                        stack.append(b)
                        onstack[b] = True
                        work.append((b, iter(self.arc_successors(b))))
                        advanced = True
                        break
                    elif onstack.get(b):
                        low[a] = min(low[a], index[b])
                if advanced:
                    continue
                work.pop()
                if work:
                    pa = work[-1][0]
                    low[pa] = min(low[pa], low[a])
                if low[a] == index[a]:
                    comp = []
                    while True:
                        b = stack.pop()
                        onstack[b] = False
                        comp.append(b)
                        if b == a:
                            break
                    sccs.append(frozenset(comp))
        return sccs

    def shortest_arc_path(self, start_arc, goal_arc):
        """Arc path start..goal (both inclusive); None if unreachable."""
        if start_arc == goal_arc:
            return [start_arc]
        prev = {start_arc: None}
        dq = deque([start_arc])
        while dq:
            a = dq.popleft()
            for b in self.arc_successors(a):
                if b in prev:
                    continue
                prev[b] = a
                if b == goal_arc:
                    path = [b]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                dq.append(b)
        return None

    def state_residue_reach(self, source_state, k):
        """target state -> bitmask of walk lengths mod k (length = #arcs >= 1)."""
        reach = defaultdict(int)
        seen = set()
        dq = deque()
        for a in self.succ.get(source_state, ()):
            node = (a[1:], 1 % k)
            if node not in seen:
                seen.add(node)
                dq.append(node)
        while dq:
            state, r = dq.popleft()
            reach[state] |= 1 << r
            for a in self.succ.get(state, ()):
                node = (a[1:], (r + 1) % k)
                if node not in seen:
                    seen.add(node)
                    dq.append(node)
        return reach

    def loop_residues(self, state, k):
        """Residues mod k of closed state-walks through `state`."""
        mask = self.state_residue_reach(state, k).get(state, 0)
        return {r for r in range(k) if mask >> r & 1}

    def states(self):
        return sorted(self.succ)


def arcs_to_closed_walk(arc_cycle):
    return Walk(tuple(a[0] for a in arc_cycle), closed=True)


def arcs_to_open_walk(arc_path):
    vs = list(arc_path[0])
    for a in arc_path[1:]:
        vs.append(a[-1])
    return Walk(tuple(vs), closed=False)


# -- components --------------------------------------------------------------

def line_graph(G: Hypergraph) -> Hypergraph:
    """2-graph on the (sorted) edges of G; vertex i is the i-th sorted edge."""
    if G.k < 2:
        raise InputError("line graph requires k >= 2")
    es = G.edge_list()
    pairs = set()
    for i, j in itertools.combinations(range(len(es)), 2):
        if len(set(es[i]) & set(es[j])) == G.k - 1:
            pairs.add((i, j))
    return Hypergraph(len(es), 2, frozenset(pairs))


def tight_components(G) -> ComponentPartition:
    """Maximal tight-connected blocks of the k-edges.

    Undirected: connected components of the line graph.  Directed (input
    must be shift-closed): strongly connected classes of the shift automaton.
    """
    if isinstance(G, BoundedDigraph):
        if not is_shift_closed(G):
            raise PreconditionError("digraph is not shift-closed")
        auto = Automaton(G.layer(G.k), G.k)
        blocks = sorted((b for b in auto.arc_sccs() if b), key=min)
        index = {}
        for i, b in enumerate(blocks):
            for e in b:
                index[e] = i
        return ComponentPartition(tuple(blocks), index)
    if isinstance(G, BoundedHypergraph):
        G = G.layer(G.k)
    es = G.edge_list()
    parent = list(range(len(es)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_sub = defaultdict(list)
    for i, e in enumerate(es):
        for f in itertools.combinations(e, G.k - 1):
            by_sub[f].append(i)
    for group in by_sub.values():
        for other in group[1:]:
            ra, rb = find(group[0]), find(other)
            if ra != rb:
                parent[rb] = ra
    groups = defaultdict(set)
    for i, e in enumerate(es):
        groups[find(i)].add(e)
    blocks = sorted((frozenset(b) for b in groups.values()), key=min)
    index = {}
    for i, b in enumerate(blocks):
        for e in b:
            index[e] = i
    return ComponentPartition(tuple(blocks), index)


def _infix_extensions(D: BoundedDigraph, f):
    """k-edges of D containing the (k-1)-tuple f as a contiguous subsequence."""
    out = []
    for e in D.layer(D.k):
        if e[:D.k - 1] == f or e[1:] == f:
            out.append(e)
    return out


def adherence(D: BoundedDigraph) -> frozenset:
    """Union over (k-1)-edges f of the tight components of the edges extending f."""
    if not is_shift_closed(D):
        raise PreconditionError("digraph is not shift-closed")
    cp = tight_components(D)
    out = set()
    for f in D.layer(D.k - 1):
        for e in _infix_extensions(D, f):
            out.update(cp.blocks[cp.index[e]])
    return frozenset(out)


def undirected_adherence(C) -> frozenset:
    """Undirected analogue over (k-1)-set edges."""
    if not isinstance(C, BoundedHypergraph):
        raise InputError("undirected adherence expects a k-bounded hypergraph")
    top = C.layer(C.k)
    if not top.edges:
        return frozenset()
    cp = tight_components(top)
    out = set()
    subs = {e for e in C.edges if len(e) == C.k - 1}
    for e in top.edges:
        if any(set(f) <= set(e) for f in subs):
            out.update(cp.blocks[cp.index[e]])
    return frozenset(out)


def _is_spanning_single_component(edges, n, k, directed):
    if not edges:
        return False
    if directed:
        auto = Automaton(set(edges), k)
        if len(auto.arc_sccs()) != 1:
            return False
    else:
        cp = tight_components(Hypergraph(n, k, frozenset(edges)))
        if len(cp.blocks) != 1:
            return False
    covered = set()
    for e in edges:
        covered.update(e)
    return covered == set(range(n))


def is_dcon(D: BoundedDigraph) -> bool:
    """Adherence is nonempty, tight-connected, and vertex-spanning."""
    if D.k < 2:
        return False
    return _is_spanning_single_component(adherence(D), D.n, D.k, directed=True)


def is_ucon(C) -> bool:
    if isinstance(C, Hypergraph):
        C = BoundedHypergraph(C.n, C.k, C.edges)
    if C.k < 2:
        return False
    return _is_spanning_single_component(undirected_adherence(C), C.n, C.k,
                                         directed=False)


def aligned_closure(G: Hypergraph) -> BoundedDigraph:
    """Directed closure whose (k-1)-layer is aligned with one component.

    The k-layer holds all orientations of the edges of G.  A (k-1)-tuple is
    added exactly when its contiguous k-edge extensions are nonempty and all
    lie in one fixed vertex-spanning tight component (the one containing the
    lexicographically smallest arc among spanning components).  The result
    satisfies directed connectivity whenever G has a spanning component.
    """
    D = orientation_closure(G)
    cp = tight_components(D)
    full = set(range(G.n))
    spanning = [b for b in cp.blocks if {v for e in b for v in e} == full]
    if not spanning:
        return D
    block = min(spanning, key=min)
    lower = set()
    for f in {e[:G.k - 1] for e in block} | {e[1:] for e in block}:
        ext = _infix_extensions(D, f)
        if ext and all(e in block for e in ext):
            lower.add(f)
    return BoundedDigraph(G.n, G.k, frozenset(set(D.edges) | lower))


# -- residues ----------------------------------------------------------------

def _component_arcs(host, block):
    if isinstance(host, BoundedDigraph):
        return set(block)
    arcs = set()
    for e in block:
        arcs.update(itertools.permutations(e))
    return arcs


def walk_residues(host):
    """Residues mod k of closed-walk orders, per tight component.

    Returns dict block_id -> frozenset of residues, indexed compatibly with
    tight_components(host).
    """
    k = host.k
    cp = tight_components(host)
    out = {}
    for bid, block in enumerate(cp.blocks):
        auto = Automaton(_component_arcs(host, block), k)
        residues = set()
        for state in auto.states():
            residues |= auto.loop_residues(state, k)
            if len(residues) == k:
                break
        out[bid] = frozenset(residues)
    return out


def _all_residues(host):
    out = set()
    for s in walk_residues(host).values():
        out |= s
    return out


def is_dape(D: BoundedDigraph) -> bool:
    """Some closed walk has order coprime to k."""
    if D.k < 2 or not D.layer(D.k):
        return False
    return any(gcd(r, D.k) == 1 for r in _all_residues(D))


def has_residue_one(host) -> bool:
    """Some closed walk has order congruent to 1 mod k."""
    if not _edge_count(host):
        return False
    return 1 % host.k in _all_residues(host)


def _edge_count(host):
    if isinstance(host, BoundedDigraph):
        return len(host.layer(host.k))
    if isinstance(host, BoundedHypergraph):
        return len(host.layer(host.k).edges)
    return len(host.edges)


def is_uape(C) -> bool:
    """A closed walk of length 1 mod k inside the undirected adherence."""
    if isinstance(C, Hypergraph):
        C = BoundedHypergraph(C.n, C.k, C.edges)
    adh = undirected_adherence(C)
    if not adh:
        return False
    return has_residue_one(Hypergraph(C.n, C.k, adh))


# -- constructive walks ------------------------------------------------------

def connect_walk(D, e, f, max_order) -> Walk | None:
    """Closed walk containing the oriented k-edges e and f, order <= max_order."""
    arcs = oriented_arcs(D)
    e, f = tuple(e), tuple(f)
    if e not in arcs or f not in arcs:
        return None
    auto = Automaton(arcs, D.k)
    if e == f:
        cycle = _shortest_cycle_through(auto, e)
    else:
        leg1 = auto.shortest_arc_path(e, f)
        leg2 = auto.shortest_arc_path(f, e)
        if leg1 is None or leg2 is None:
            return None
        cycle = leg1[:-1] + leg2[:-1]
    if cycle is None or len(cycle) > max_order:
        return None
    return arcs_to_closed_walk(cycle)


def _shortest_cycle_through(auto: Automaton, a):
    best = None
    for b in auto.arc_successors(a):
        if b == a:
            return [a]
        path = auto.shortest_arc_path(b, a)
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    if best is None:
        return None
    return [a] + best[:-1]


def _loop_at_anchor_through(auto, anchor, tgt):
    """Arc sequence from state-after(anchor) through tgt back to state-after(anchor).

    Suitable for insertion right after `anchor` in an arc cycle; the returned
    sequence ends with a second copy of `anchor`.
    """
    p1 = auto.shortest_arc_path(anchor, tgt)
    p2 = auto.shortest_arc_path(tgt, anchor)
    if p1 is None or p2 is None:
        return None
    return p1[1:] + p2[1:]


def visiting_walk(D, start, q=None) -> Walk:
    """Closed walk starting with `start` covering every edge of its tight
    component, with order congruent to q mod k when requested."""
    k = D.k
    start = tuple(start)
    all_arcs = oriented_arcs(D)
    if start not in all_arcs:
        raise PreconditionError("start orientation is not a window of the host")
    cp = tight_components(D)
    key = start if isinstance(D, BoundedDigraph) else tuple(sorted(start))
    if key not in cp.index:
        raise PreconditionError("start edge not in the host")
    block = cp.blocks[cp.index[key]]
    auto = Automaton(_component_arcs(D, block), k)
    sccs = auto.arc_sccs()
    home = next(s for s in sccs if start in s)
    targets = []
    if isinstance(D, BoundedDigraph):
        for e in sorted(block):
            if e not in home:
                raise PreconditionError("component is not tight-connected as oriented walks")
            targets.append(e)
    else:
        for e in sorted(block):
            opts = sorted(p for p in itertools.permutations(e) if p in home)
            if not opts:
                raise PreconditionError(f"edge {e} has no orientation reachable from start")
            targets.append(opts[0])
    cycle = _shortest_cycle_through(auto, start)
    if cycle is None:
        raise PreconditionError("start edge lies on no closed walk")
    i = cycle.index(start)
    cycle = cycle[i:] + cycle[:i]
    covered = set(cycle)
    for tgt in targets:
        if tgt in covered:
            continue
        loop = _loop_at_anchor_through(auto, start, tgt)
        if loop is None:
            raise PreconditionError("component disconnected at the oriented level")
        cycle = [cycle[0]] + loop + cycle[1:]
        covered.update(loop)
    if q is not None:
        cycle = _fix_cycle_residue(auto, cycle, q, k)
    return arcs_to_closed_walk(cycle)


def _fix_cycle_residue(auto, cycle, q, k):
    """Insert loops at the anchor until the arc count is q mod k."""
    q %= k
    delta = (q - len(cycle)) % k
    if delta == 0:
        return cycle
    anchor = cycle[0]
    residues = auto.loop_residues(anchor[1:], k)
    combo = _residue_combo(sorted(residues), delta, k)
    if combo is None:
        raise PreconditionError(f"residue {q} mod {k} unreachable for this component")
    extra = []
    for r in combo:
        loop = _shortest_loop_with_residue(auto, anchor[1:], r, k)
        if loop is None:
            raise PreconditionError(f"residue {q} mod {k} unreachable for this component")
        extra.extend(loop)
    return [cycle[0]] + extra + cycle[1:]


def _residue_combo(loop_residues, delta, k):
    """A small multiset of loop residues summing to delta mod k, or None."""
    best = {0: ()}
    frontier = {0}
    for _ in range(k + 1):
        new = set()
        for cur in frontier:
            for r in loop_residues:
                nxt = (cur + r) % k
                if nxt not in best:
                    best[nxt] = best[cur] + (r,)
                    new.add(nxt)
        if delta in best:
            return best[delta]
        frontier = new
        if not frontier:
            break
    return best.get(delta)


def _shortest_loop_with_residue(auto, base_state, r, k):
    """Arc loop based at base_state with arc count congruent to r mod k."""
    prev = {}
    dq = deque()
    for a in auto.succ.get(base_state, ()):
        node = (a, 1 % k)
        if node not in prev:
            prev[node] = None
            dq.append(node)
    while dq:
        node = dq.popleft()
        a, rr = node
        if a[1:] == base_state and rr == r % k:
            path = [node]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return [p[0] for p in path[::-1]]
        for b in auto.arc_successors(a):
            nxt = (b, (rr + 1) % k)
            if nxt not in prev:
                prev[nxt] = node
                dq.append(nxt)
    return None


def densest_component(L: Hypergraph):
    """Tight component maximizing edges over shadow edges.

    Returns (edge set, ratio); ties broken by lexicographically smallest
    edge.  The ratio is asserted >= the whole-graph ratio.
    """
    if not L.edges:
        raise PreconditionError("empty graph has no densest component")
    cp = tight_components(L)
    best = None
    for block in cp.blocks:
        sub = Hypergraph(L.n, L.k, block)
        den = len(shadow(sub).edges) if L.k >= 2 else 1
        ratio = Fraction(len(block), den)
        if best is None or ratio > best[0] or (ratio == best[0] and min(block) < min(best[1])):
            best = (ratio, block)
    whole_den = len(shadow(L).edges) if L.k >= 2 else 1
    assert best[0] >= Fraction(len(L.edges), whole_den)
    return best[1], best[0]


def linked_edges(D: BoundedDigraph, v):
    """Oriented k-edges (e, f) sharing k-1 vertices with v in f but not in e.

    Found by scanning a connecting walk for the last window containing v.
    Raises when no witnessing walk exists (e.g. removing v disconnects the
    edges at v from the rest).
    """
    pool = sorted(D.layer(D.k))
    with_v = [e for e in pool if v in e]
    without_v = [e for e in pool if v not in e]
    if not with_v or not without_v:
        raise PreconditionError(f"no edges witnessing vertex {v}")
    auto = Automaton(oriented_arcs(D), D.k)
    for f0 in with_v:
        for e0 in without_v:
            path = auto.shortest_arc_path(f0, e0)
            if path is None:
                continue
            last_with = max(i for i, a in enumerate(path) if v in a)
            f, e = path[last_with], path[last_with + 1]
            return e, f
    raise PreconditionError("no linking walk found")


def common_extension(G: Hypergraph, D1, D2, t):
    """Vertex completing both (t-1)-cliques D1, D2 to t-cliques of G."""
    D1, D2 = frozenset(D1), frozenset(D2)
    if len(D1 & D2) != t - 2:
        raise PreconditionError("cliques must overlap in t-2 vertices")
    for v in range(G.n):
        if v in D1 or v in D2:
            continue
        if _is_clique(G, D1 | {v}) and _is_clique(G, D2 | {v}):
            return v
    raise PreconditionError("no common extension vertex (degree hypothesis violated?)")


def _is_clique(G: Hypergraph, S):
    S = sorted(S)
    if len(S) < G.k:
        return True
    return all(G.has_edge(f) for f in itertools.combinations(S, G.k))


def powers_threshold(k, t) -> Fraction:
    """Codegree density above which the clique-graph constructions work."""
    return 1 - Fraction(1, comb(t - 1, k - 1) + comb(t - 2, k - 2))


def powers_odd_walk(G: Hypergraph, t) -> Walk:
    """Closed walk of order (t-1)t + (t-1) = -1 mod t in the clique t-graph.

    Built from a t-clique A = (a_1..a_t) and shared completions b_i of the
    (t-1)-clique pairs (A - a_1, A - a_i).
    """
    from .core import clique_graph
    K = clique_graph(G, t)
    if not K.edges:
        raise PreconditionError("clique graph has no t-cliques")
    A = min(K.edge_list())
    a = list(A)
    b = {}
    for i in range(1, t):
        b[i + 1] = common_extension(G, frozenset(A) - {a[0]}, frozenset(A) - {a[i]}, t)
    blocks = [tuple(a)]
    for i in range(1, t - 1):
        blocks.append(tuple(a[1:i]) + (b[i + 1], a[0]) + tuple(a[i + 1:]))
    blocks.append(tuple(a[1:t - 1]) + (b[t],))
    seq = tuple(v for blk in blocks for v in blk)
    w = Walk(seq, closed=True)
    if w.order != (t - 1) * t + (t - 1) or not w.validate(K):
        raise PreconditionError("odd-walk construction failed (degree hypothesis violated?)")
    return w


def fixed_length_walk(C: BoundedDigraph, e, f):
    """(l, walk): an (e,f)-walk of order exactly l, the same l for every
    ordered pair of k-edges of C.  C should be the shift closure of a cycle
    power whose order is coprime to the uniformity."""
    t = C.k
    arcs = sorted(C.layer(t))
    if not arcs:
        raise PreconditionError("host has no top-layer edges")
    s = len({v for a in arcs for v in a})
    if gcd(s, t) != 1:
        raise PreconditionError(f"order {s} and uniformity {t} are not coprime")
    horizon = (t + 1) * s * t + 2 * t
    auto = Automaton(arcs, t)
    common = None
    for a in arcs:
        reach = _reachable_orders(auto, a, horizon)
        sets = [reach.get(b, set()) for b in arcs]
        mine = set.intersection(*sets) if sets else set()
        common = mine if common is None else (common & mine)
        if not common:
            raise PreconditionError("no uniform walk order exists within the horizon")
    ell = min(common)
    walk = _walk_of_exact_order(auto, tuple(e), tuple(f), ell)
    return ell, walk


def _reachable_orders(auto, start_arc, horizon):
    """target arc -> set of orders (vertex counts) of (start..target) paths."""
    t = auto.k
    out = defaultdict(set)
    frontier = {start_arc}
    out[start_arc].add(t)
    order = t
    while frontier and order < horizon:
        order += 1
        nxt = set()
        for a in frontier:
            for b in auto.arc_successors(a):
                if order not in out[b]:
                    out[b].add(order)
                    nxt.add(b)
        frontier = nxt
    return out


def _walk_of_exact_order(auto, e, f, ell):
    t = auto.k
    target_steps = ell - t
    prev = {(e, 0): None}
    dq = deque([(e, 0)])
    while dq:
        node = dq.popleft()
        a, d = node
        if d == target_steps:
            if a == f:
                path = [node]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return arcs_to_open_walk([p[0] for p in path[::-1]])
            continue
        for b in auto.arc_successors(a):
            nxt = (b, d + 1)
            if nxt not in prev:
                prev[nxt] = node
                dq.append(nxt)
    raise PreconditionError(f"no walk of order {ell} between the given edges")
