"""Blow-ups, balanced cluster families, partite extraction, tilings, and
assembly/validation of shaped blow-up covers.

An s-partite working graph is kept as (parts, edges): `parts` is a tuple of
ordered vertex tuples and `edges` a set of transversal tuples aligned with
the part order.
"""

from __future__ import annotations

import itertools
import json
import random as _random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .core import BoundedDigraph, BoundedHypergraph, Hypergraph
from .errors import InputError, PhaseError, PreconditionError


@dataclass(frozen=True)
class ClusterFamily:
    """Ordered family of pairwise disjoint vertex clusters."""

    clusters: tuple
    exceptional_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "clusters",
                           tuple(frozenset(c) for c in self.clusters))
        seen = set()
        for c in self.clusters:
            if seen & c:
                raise InputError("clusters overlap")
            seen |= c
        if self.exceptional_index is not None:
            if not 0 <= self.exceptional_index < len(self.clusters):
                raise InputError("exceptional index out of range")
            if len(self.clusters[self.exceptional_index]) != 1:
                raise InputError("exceptional cluster must be a singleton")

    def __len__(self):
        return len(self.clusters)

    def sizes(self):
        return tuple(len(c) for c in self.clusters)

    def union(self):
        out = set()
        for c in self.clusters:
            out |= c
        return out

    def regular_indices(self):
        return [i for i in range(len(self.clusters)) if i != self.exceptional_index]

    def is_m_balanced(self, m):
        return all(len(c) == m for c in self.clusters)

    def is_near_balanced(self, m, eta):
        lo, hi = (1 - Fraction(eta)) * m, (1 + Fraction(eta)) * m
        return all(lo <= len(c) <= hi for c in self.clusters)

    def is_quasi_balanced(self, m, eta):
        if self.exceptional_index is None:
            return False
        rest = [self.clusters[i] for i in self.regular_indices()]
        lo, hi = (1 - Fraction(eta)) * m, (1 + Fraction(eta)) * m
        return all(lo <= len(c) <= hi for c in rest)


@dataclass(frozen=True)
class Blowup:
    """Reduced (di)graph together with one host cluster per reduced vertex."""

    reduced: object
    family: ClusterFamily

    def __post_init__(self):
        if len(self.family) != self.reduced.n:
            raise InputError("family size must match the reduced vertex count")

    def expand(self):
        """Host-side graph: every partite tuple over every reduced edge."""
        verts = self.family.union()
        n = max(verts) + 1 if verts else 0
        clusters = [sorted(c) for c in self.family.clusters]
        if isinstance(self.reduced, BoundedDigraph):
            edges = set()
            for e in self.reduced.edges:
                for combo in itertools.product(*(clusters[x] for x in e)):
                    if len(set(combo)) == len(combo):
                        edges.add(combo)
            return BoundedDigraph(n, self.reduced.k, frozenset(edges))
        edges = set()
        for e in self.reduced.edges:
            for combo in itertools.product(*(clusters[x] for x in e)):
                if len(set(combo)) == len(combo):
                    edges.add(tuple(sorted(combo)))
        if isinstance(self.reduced, BoundedHypergraph):
            return BoundedHypergraph(n, self.reduced.k, frozenset(edges))
        return Hypergraph(n, self.reduced.k, frozenset(edges))


def partite_subgraph(G, F: ClusterFamily):
    """Edges of G with at most one vertex per cluster, inside the family union."""
    union = F.union()
    where = {}
    for i, c in enumerate(F.clusters):
        for v in c:
            where[v] = i
    def partite(e):
        if not set(e) <= union:
            return False
        hit = [where[v] for v in e]
        return len(set(hit)) == len(hit)
    edges = frozenset(e for e in G.edges if partite(e))
    if isinstance(G, BoundedDigraph):
        return BoundedDigraph(G.n, G.k, edges)
    if isinstance(G, BoundedHypergraph):
        return BoundedHypergraph(G.n, G.k, edges)
    return Hypergraph(G.n, G.k, edges)


# -- patterns ------------------------------------------------------------------

def pattern_of(G, transversal):
    """Induced edge pattern of a partite transversal, relabelled by position."""
    pos = {v: i for i, v in enumerate(transversal)}
    keep = set(transversal)
    if isinstance(G, BoundedDigraph):
        return frozenset(tuple(pos[v] for v in e)
                         for e in G.edges if set(e) <= keep)
    return frozenset(tuple(sorted(pos[v] for v in e))
                     for e in G.edges if set(e) <= keep)


def pattern_graph(G, pattern, s):
    if isinstance(G, BoundedDigraph):
        return BoundedDigraph(s, G.k, frozenset(pattern))
    if isinstance(G, BoundedHypergraph):
        return BoundedHypergraph(s, G.k, frozenset(pattern))
    uniform = all(len(e) == G.k for e in pattern)
    if uniform:
        return Hypergraph(s, G.k, frozenset(pattern))
    return BoundedHypergraph(s, G.k, frozenset(pattern))


def majority_pattern(G, parts, predicate=None, budget=2_000_000):
    """Most frequent induced pattern over partite transversals.

    Returns (pattern, transversals): the winning pattern (restricted to
    transversals whose pattern satisfies `predicate` when given) and the
    aligned transversal tuples carrying it.  Ties break on the smaller
    serialized pattern.
    """
    total = 1
    for p in parts:
        total *= len(p)
    if total > budget:
        raise PreconditionError(f"{total} transversals exceed the pattern budget")
    groups = defaultdict(list)
    s = len(parts)
    for combo in itertools.product(*parts):
        if len(set(combo)) != len(combo):
            continue
        groups[pattern_of(G, combo)].append(combo)
    best = None
    for pat, combos in groups.items():
        if predicate is not None and not predicate(pattern_graph(G, pat, s)):
            continue
        key = (-len(combos), sorted(pat))
        if best is None or key < best[0]:
            best = (key, pat, combos)
    if best is None:
        return None, []
    return best[1], best[2]


# -- partite extraction --------------------------------------------------------

def extract_edge_blowup(parts, edges, m, budget=500_000):
    """m-subsets of each part whose full transversal product lies in `edges`.

    Staged search: m-subsets of the current part are ranked by the number of
    compatible tails, with backtracking over the ranked order.  Returns a
    list of m-subsets (sorted tuples) or None when the search exhausts.
    """
    s = len(parts)
    if any(len(p) < m for p in parts):
        return None
    counter = [budget]

    def stage(i, tails):
        if counter[0] <= 0:
            return None
        if i == s - 1:
            finals = sorted({t[0] for t in tails})
            if len(finals) < m:
                return None
            return [tuple(finals[:m])]
        by_head = defaultdict(set)
        for t in tails:
            by_head[t[0]].add(t[1:])
        heads = sorted(h for h, ts in by_head.items() if len(ts) > 0)
        ranked = []
        for combo in itertools.combinations(heads, m):
            counter[0] -= 1
            if counter[0] <= 0:
                return None
            common = set.intersection(*(by_head[h] for h in combo))
            if len(common) >= m ** (s - 1 - i):
                ranked.append((-len(common), combo, common))
        ranked.sort(key=lambda r: (r[0], r[1]))
        for _, combo, common in ranked:
            rest = stage(i + 1, common)
            if rest is not None:
                return [combo] + rest
        return None

    tails = set(edges)
    out = stage(0, tails)
    if out is None:
        return None
    return [tuple(sorted(c)) for c in out]


def density(parts, edges) -> Fraction:
    total = 1
    for p in parts:
        total *= len(p)
    if total == 0:
        return Fraction(0)
    return Fraction(len(edges), total)


def _restrict(parts, edges, subs):
    keep = [set(s) for s in subs]
    new_edges = {e for e in edges if all(v in keep[i] for i, v in enumerate(e))}
    return tuple(tuple(sorted(s)) for s in subs), new_edges


def lower_regular_witness(parts, edges, eps, d, seed=0, samples=4000):
    """Subsets X_i with |X_i| >= eps|V_i| and density < d - eps, or None.

    Exhaustive (using degree monotonicity) for bipartite instances;
    seeded sampling otherwise.
    """
    s = len(parts)
    d, eps = Fraction(d), Fraction(eps)
    if s == 2 and len(parts[0]) <= 16:
        v2 = list(parts[1])
        deg = {v: 0 for v in v2}
        adj = defaultdict(set)
        for a, b in edges:
            adj[a].add(b)
        min1 = max(1, -(-len(parts[0]) * eps.numerator // eps.denominator))
        min2 = max(1, -(-len(parts[1]) * eps.numerator // eps.denominator))
        for r in range(min1, len(parts[0]) + 1):
            for X1 in itertools.combinations(parts[0], r):
                into = Counter()
                for a in X1:
                    for b in adj[a]:
                        into[b] += 1
                ordered = sorted(v2, key=lambda v: (into[v], v))
                run = 0
                for j, v in enumerate(ordered, start=1):
                    run += into[v]
                    if j >= min2 and Fraction(run, r * j) < d - eps:
                        return (tuple(sorted(X1)), tuple(sorted(ordered[:j])))
        return None
    rng = _random.Random(seed)
    mins = [max(1, -(-len(p) * eps.numerator // eps.denominator)) for p in parts]
    for _ in range(samples):
        subs = []
        for i, p in enumerate(parts):
            r = rng.randint(mins[i], len(p))
            subs.append(tuple(sorted(rng.sample(list(p), r))))
        _, sub_edges = _restrict(parts, edges, subs)
        if density(subs, sub_edges) < d - eps:
            return tuple(subs)
    return None


def extract_lower_regular_tuple(parts, edges, eps, d, eta, seed=0):
    """Balanced lower-regular tuple via the density-increment iteration.

    Returns (parts', edges', density') certified (eps, d)-lower-regular by
    witness search, or raises PhaseError when parts become too small.
    """
    eps, d, eta = Fraction(eps), Fraction(d), Fraction(eta)
    if density(parts, edges) < d:
        raise PreconditionError("input density below the requested level")
    rng = _random.Random(seed)
    m = min(len(p) for p in parts)
    size = max(1, int(eta * m))
    cur_parts, cur_edges = _balanced_dense_subtuple(parts, edges, size, d, rng)
    cur_d = d
    while True:
        witness = lower_regular_witness(cur_parts, cur_edges, eps, cur_d,
                                        seed=rng.randrange(1 << 30))
        if witness is None:
            return cur_parts, cur_edges, density(cur_parts, cur_edges)
        cell = max(1, int(eps * len(cur_parts[0])))
        if cell < 1 or len(cur_parts[0]) < 2:
            raise PhaseError("lower-regular", "parts too small to subdivide")
        partitions = []
        for i, p in enumerate(cur_parts):
            w = list(witness[i])[:cell]
            rest = [v for v in p if v not in set(w)]
            cells = [tuple(sorted(w))] if len(w) == cell else []
            if len(w) < cell:
                pad = rest[:cell - len(w)]
                cells = [tuple(sorted(w + tuple(pad)))]
                rest = rest[cell - len(w):]
            while len(rest) >= cell:
                cells.append(tuple(sorted(rest[:cell])))
                rest = rest[cell:]
            if not cells:
                raise PhaseError("lower-regular", "parts too small to subdivide")
            partitions.append(cells)
        best = None
        for combo in itertools.product(*partitions):
            _, sub_edges = _restrict(cur_parts, cur_edges, combo)
            dd = density(combo, sub_edges)
            if best is None or dd > best[0]:
                best = (dd, combo, sub_edges)
        cur_d = max(cur_d, best[0]) if best[0] >= cur_d else cur_d
        cur_parts = tuple(tuple(sorted(c)) for c in best[1])
        cur_edges = best[2]
        if best[0] > 1:  # unreachable; defensive
            raise PhaseError("lower-regular", "density overflow")


def _balanced_dense_subtuple(parts, edges, size, d, rng, tries=400):
    """Size-balanced subtuple with density >= d (exists by averaging)."""
    best = None
    for _ in range(tries):
        subs = [tuple(sorted(rng.sample(list(p), size))) for p in parts]
        sub_parts, sub_edges = _restrict(parts, edges, subs)
        dd = density(sub_parts, sub_edges)
        if best is None or dd > best[0]:
            best = (dd, sub_parts, sub_edges)
        if dd >= d:
            return sub_parts, sub_edges
    if best and best[0] >= d:
        return best[1], best[2]
    raise PhaseError("lower-regular", "no dense balanced subtuple found by sampling")


# -- tilings -------------------------------------------------------------------

def _perfect_matching_backtrack(H: Hypergraph):
    """Exact perfect matching of an s-graph by backtracking, or None."""
    if H.n % H.k:
        return None
    by_vertex = defaultdict(list)
    for e in H.edge_list():
        for v in e:
            by_vertex[v].append(e)
    chosen = []
    used = set()

    def rec():
        free = [v for v in range(H.n) if v not in used]
        if not free:
            return True
        v = free[0]
        for e in by_vertex[v]:
            if used & set(e):
                continue
            chosen.append(e)
            used.update(e)
            if rec():
                return True
            chosen.pop()
            used.difference_update(e)
        return False

    return list(chosen) if rec() else None


def almost_tiling(P: Hypergraph, eps, mu, m2, seed=0, max_rounds=4,
                  coverage_target=None):
    """Tiling of P by lower-regular balanced tuples via reduced-graph rounds.

    Each round blocks the vertices into m2-sets, forms the reduced s-graph
    (edge when at least 3*(mu/8)*m2^s partite edges run across), finds a
    perfect matching of it by exhaustive search, and extracts lower-regular
    tuples inside the matched blocks.  Returns (tiles, report); a missing
    reduced matching stops the process with the partial tiling.
    """
    s = P.k
    mu = Fraction(mu)
    nu = mu / 8
    rng = _random.Random(seed)
    coverage_target = coverage_target if coverage_target is not None else \
        (1 - mu / 8) * P.n
    tiles = []
    report = {"rounds": 0, "matching_found": True}
    if max_rounds == 0:
        return tiles, report
    covered = set()
    for _ in range(max_rounds):
        report["rounds"] += 1
        pool = [v for v in range(P.n) if v not in covered]
        blocks = [tuple(pool[i:i + m2]) for i in range(0, len(pool) - m2 + 1, m2)]
        if len(blocks) < s:
            break
        reduced_edges = set()
        for X in itertools.combinations(range(len(blocks)), s):
            cnt = 0
            for combo in itertools.product(*(blocks[i] for i in X)):
                if P.has_edge(combo):
                    cnt += 1
            if cnt >= 3 * nu * m2 ** s:
                reduced_edges.add(X)
        R = Hypergraph(len(blocks), s, frozenset(reduced_edges))
        usable = len(blocks) - len(blocks) % s
        M = None
        if len(blocks) % s == 0:
            M = _perfect_matching_backtrack(R)
        if M is None:
            sub = R.induced(range(usable))
            M = _perfect_matching_backtrack(sub)
        if M is None:
            report["matching_found"] = False
            break
        for X in M:
            parts = tuple(blocks[i] for i in X)
            edges = {c for c in itertools.product(*parts) if P.has_edge(c)}
            if density(parts, edges) < 2 * nu:
                continue
            try:
                tparts, tedges, _ = extract_lower_regular_tuple(
                    parts, edges, eps, 2 * nu, Fraction(1), seed=rng.randrange(1 << 30))
            except (PhaseError, PreconditionError):
                continue
            tiles.append(tparts)
            for p in tparts:
                covered.update(p)
        if len(covered) >= coverage_target:
            break
    report["covered"] = len(covered)
    return tiles, report


# -- connecting blow-ups ---------------------------------------------------------

def connect_blowups(G, predicate, V: ClusterFamily, s2, m2, seed=0,
                    avoid=frozenset(), make_exceptional=True):
    """Blow-up whose first len(V) clusters sit inside the clusters of V.

    Fresh parts are sampled (seeded) from outside V and `avoid`; transversal
    patterns are grouped and the most frequent predicate-satisfying pattern
    is extracted at size m2.  The last fresh cluster is demoted to an
    exceptional singleton when requested.  Returns the Blowup or None.
    """
    s1 = len(V)
    if s2 <= s1:
        raise InputError("target size must exceed the hit family size")
    rng = _random.Random(seed)
    sizes = set(V.sizes())
    if len(sizes) != 1:
        raise PreconditionError("hit family must be m-balanced")
    m1 = sizes.pop()
    pool = sorted(set(range(G.n)) - V.union() - set(avoid))
    need = (s2 - s1) * m1
    if len(pool) < need:
        return None
    fresh = rng.sample(pool, need)
    parts = [tuple(sorted(c)) for c in V.clusters]
    for i in range(s2 - s1):
        parts.append(tuple(sorted(fresh[i * m1:(i + 1) * m1])))
    pattern, combos = majority_pattern(G, parts, predicate=predicate)
    if pattern is None:
        return None
    subs = extract_edge_blowup(parts, set(combos), m2)
    if subs is None:
        return None
    clusters = [frozenset(c) for c in subs]
    exceptional = None
    if make_exceptional:
        exceptional = s2 - 1
        clusters[-1] = frozenset([min(clusters[-1])])
    fam = ClusterFamily(tuple(clusters), exceptional_index=exceptional)
    return Blowup(pattern_graph(G, pattern, s2), fam)


# -- covers ---------------------------------------------------------------------

@dataclass(frozen=True)
class Cover:
    """Shaped cover: vertex families, edge families, and hit maps.

    hits[(e, x)] maps the index of a cluster of the edge family at shape
    edge e to the index of the cluster of the vertex family at endpoint x
    that contains it.
    """

    shape: Hypergraph
    vertex_families: dict
    vertex_reduced: dict
    edge_families: dict
    edge_reduced: dict
    hits: dict

    def to_json(self) -> str:
        def fam(f):
            return {"clusters": [sorted(c) for c in f.clusters],
                    "exceptional": f.exceptional_index}

        def red(R):
            return {"n": R.n, "k": R.k,
                    "directed": isinstance(R, BoundedDigraph),
                    "edges": [list(e) for e in R.edge_list()]}

        doc = {
            "schema": 1,
            "shape": {"n": self.shape.n, "edges": [list(e) for e in self.shape.edge_list()]},
            "vertex_families": {str(v): fam(f) for v, f in self.vertex_families.items()},
            "vertex_reduced": {str(v): red(r) for v, r in self.vertex_reduced.items()},
            "edge_families": {f"{u}-{v}": fam(f) for (u, v), f in self.edge_families.items()},
            "edge_reduced": {f"{u}-{v}": red(r) for (u, v), r in self.edge_reduced.items()},
            "hits": [{"edge": list(e), "endpoint": x,
                      "map": sorted(mp.items())}
                     for (e, x), mp in self.hits.items()],
        }
        return json.dumps(doc, indent=1)


def cover_from_json(text: str) -> Cover:
    doc = json.loads(text)

    def fam(d):
        return ClusterFamily(tuple(frozenset(c) for c in d["clusters"]),
                             exceptional_index=d["exceptional"])

    def red(d):
        edges = frozenset(tuple(e) for e in d["edges"])
        if d["directed"]:
            return BoundedDigraph(d["n"], d["k"], edges)
        uniform = all(len(e) == d["k"] for e in edges)
        cls = Hypergraph if uniform else BoundedHypergraph
        return cls(d["n"], d["k"], edges)

    shape = Hypergraph(doc["shape"]["n"], 2,
                       frozenset(tuple(e) for e in doc["shape"]["edges"]))
    vf = {int(v): fam(d) for v, d in doc["vertex_families"].items()}
    vr = {int(v): red(d) for v, d in doc["vertex_reduced"].items()}
    ef = {}
    er = {}
    for key, d in doc["edge_families"].items():
        u, v = (int(t) for t in key.split("-"))
        ef[(u, v)] = fam(d)
    for key, d in doc["edge_reduced"].items():
        u, v = (int(t) for t in key.split("-"))
        er[(u, v)] = red(d)
    hits = {}
    for h in doc["hits"]:
        hits[(tuple(h["edge"]), h["endpoint"])] = dict((int(a), int(b)) for a, b in h["map"])
    return Cover(shape, vf, vr, ef, er, hits)


def _family_plan(n_free, s1, m1, eta):
    """Family sizes 1 + (s1-1)*m_f exactly covering n_free, or None."""
    lo = max(1, int((1 - eta) * m1) + (0 if (1 - eta) * m1 == int((1 - eta) * m1) else 1))
    lo = max(lo, 1)
    hi = int((1 + eta) * m1)
    options = [1 + (s1 - 1) * m for m in range(lo, hi + 1)]
    if not options:
        return None
    # greedy + adjust: fill with the target size, then fix the remainder
    target = 1 + (s1 - 1) * m1
    counts = {}
    best = None

    def rec(remaining, idx, chosen):
        nonlocal best
        if best is not None:
            return
        if remaining == 0:
            best = list(chosen)
            return
        if idx >= len(options) * 64:
            return
        for size in sorted(options, key=lambda s: abs(s - target)):
            if size <= remaining:
                chosen.append(size)
                rec(remaining - size, idx + 1, chosen)
                chosen.pop()
                if best is not None:
                    return

    rec(n_free, 0, [])
    return best


def build_cover(G, predicate, shape: Hypergraph, s1, s2, m1, m2,
                eta, seed=0, max_degree=2):
    """Assemble a shaped cover: simple cover first, then one connecting
    blow-up per shape edge, then trimming."""
    eta = Fraction(eta)
    rng = _random.Random(seed)
    degs = Counter()
    for e in shape.edges:
        degs.update(e)
    if degs and max(degs.values()) > max_degree:
        raise PreconditionError(f"shape degree exceeds {max_degree}")
    want = shape.n
    plan = _family_plan(G.n, s1, m1, eta)
    if plan is None or len(plan) < want:
        raise PhaseError("simple-cover", "no feasible family size plan")
    # merge extra families into the plan by rebuilding with exactly `want`
    if len(plan) != want:
        plan = _exact_count_plan(G.n, want, s1, m1, eta)
        if plan is None:
            raise PhaseError("simple-cover", f"cannot split {G.n} vertices into "
                                             f"{want} families at scale {m1}")
    pool = list(range(G.n))
    rng.shuffle(pool)
    vertex_families = {}
    vertex_reduced = {}
    cursor = 0
    for v, fam_size in zip(sorted(range(want)), plan):
        m_f = (fam_size - 1) // (s1 - 1)
        chunk = pool[cursor:cursor + fam_size]
        cursor += fam_size
        parts = [tuple(sorted(chunk[i * m_f:(i + 1) * m_f])) for i in range(s1 - 1)]
        parts.append((chunk[-1],))
        pattern, combos = majority_pattern(G, parts, predicate=predicate)
        if pattern is None:
            raise PhaseError("simple-cover", f"no admissible pattern for family {v}")
        subs = extract_edge_blowup(parts, set(combos), 1)  # existence probe
        if subs is None:
            raise PhaseError("simple-cover", f"pattern not extractable for family {v}")
        if len(combos) != _full_product(parts):
            raise PhaseError("simple-cover",
                             f"family {v} is not uniformly patterned; "
                             "refusing a lossy simple cover")
        fam = ClusterFamily(tuple(frozenset(p) for p in parts),
                            exceptional_index=s1 - 1)
        vertex_families[v] = fam
        vertex_reduced[v] = pattern_graph(G, pattern, s1)
    edge_families = {}
    edge_reduced = {}
    hits = {}
    used = set()
    exceptional_vertices = {next(iter(f.clusters[f.exceptional_index]))
                            for f in vertex_families.values()}
    for (u, v) in sorted(shape.edges):
        sat = set()
        for w, f in vertex_families.items():
            if w in (u, v):
                continue
            for c in f.clusters:
                if len(c & used) >= eta * m1 / 4:
                    sat |= c
        avoid = used | sat | exceptional_vertices
        if len(avoid) > eta * G.n:
            raise PhaseError("connection", f"avoid set too large at edge {(u, v)}")
        fu, fv = vertex_families[u], vertex_families[v]
        m_c = min(min(len(fu.clusters[i]) for i in fu.regular_indices()),
                  min(len(fv.clusters[i]) for i in fv.regular_indices()))
        hit_clusters = []
        owners = []
        for w, f in ((u, fu), (v, fv)):
            for i in f.regular_indices():
                hit_clusters.append(frozenset(sorted(f.clusters[i])[:m_c]))
                owners.append((w, i))
        Vfam = ClusterFamily(tuple(hit_clusters))
        B = connect_blowups(G, predicate, Vfam, s2, m2,
                            seed=rng.randrange(1 << 30), avoid=avoid)
        if B is None:
            raise PhaseError("connection", f"no connecting blow-up at edge {(u, v)}")
        edge_families[(u, v)] = B.family
        edge_reduced[(u, v)] = B.reduced
        hit_u = {}
        hit_v = {}
        for idx in range(len(Vfam)):
            w, i = owners[idx]
            (hit_u if w == u else hit_v)[idx] = i
        hits[((u, v), u)] = hit_u
        hits[((u, v), v)] = hit_v
        for idx in range(len(Vfam), s2):
            used |= B.family.clusters[idx]
    # trimming: fresh connection vertices leave the vertex families
    if used:
        new_families = {}
        for w, f in vertex_families.items():
            clusters = [c - used for c in f.clusters]
            if any(not c for c in clusters):
                raise PhaseError("trimming", f"family {w} lost a cluster")
            new_families[w] = ClusterFamily(tuple(clusters),
                                            exceptional_index=f.exceptional_index)
        vertex_families = new_families
    return Cover(shape, vertex_families, vertex_reduced,
                 edge_families, edge_reduced, hits)


def _full_product(parts):
    total = 1
    for p in parts:
        total *= len(p)
    return total


def _exact_count_plan(n, count, s1, m1, eta):
    lo = max(1, -(-int((1 - Fraction(eta)) * m1 * 1))) if True else 1
    lo = max(1, int((1 - Fraction(eta)) * m1))
    if (1 - Fraction(eta)) * m1 > lo:
        lo += 1
    hi = int((1 + Fraction(eta)) * m1)
    sizes = [1 + (s1 - 1) * m for m in range(lo, hi + 1)]
    if not sizes:
        return None
    mn, mx = min(sizes) * count, max(sizes) * count
    if not mn <= n <= mx:
        return None
    plan = []
    remaining = n
    for i in range(count):
        left = count - i - 1
        pick = None
        for size in sorted(sizes, key=lambda s: abs(s - (1 + (s1 - 1) * m1))):
            rest = remaining - size
            if min(sizes) * left <= rest <= max(sizes) * left:
                pick = size
                break
        if pick is None:
            return None
        plan.append(pick)
        remaining -= pick
    return plan if remaining == 0 else None


def validate_cover(C: Cover, G, predicate, m1=None, m2=None, eta=None) -> dict:
    """Exact check of the balance, hitting, partition, and blow-up-equality
    conditions; returns a report with per-condition verdicts."""
    report = {}
    s1 = {len(f) for f in C.vertex_families.values()}
    report["sizes_consistent"] = len(s1) == 1
    # C1: vertex families are quasi balanced
    ok = True
    for f in C.vertex_families.values():
        if f.exceptional_index is None:
            ok = False
            break
        if m1 is not None and eta is not None and not f.is_quasi_balanced(m1, eta):
            ok = False
            break
    report["C1"] = ok
    # C2: edge families balanced with pairwise disjoint supports
    ok = True
    seen = set()
    for (u, v), f in C.edge_families.items():
        sizes = {len(c) for i, c in enumerate(f.clusters) if i != f.exceptional_index}
        if m2 is not None and sizes - {m2}:
            ok = False
        sup = f.union()
        if seen & sup:
            ok = False
        seen |= sup
    report["C2"] = ok
    # C3: each edge family hits the vertex families of its endpoints
    ok = True
    for (u, v) in C.edge_families:
        for x in (u, v):
            mp = C.hits.get(((u, v), x))
            if mp is None:
                ok = False
                continue
            fx = C.vertex_families[x]
            targets = set(mp.values())
            if targets != set(fx.regular_indices()):
                ok = False
            fe = C.edge_families[(u, v)]
            for wi, vi in mp.items():
                if not fe.clusters[wi] <= fx.clusters[vi]:
                    ok = False
    report["C3"] = ok
    # C4: designated union partitions the host vertex set
    counted = Counter()
    for f in C.vertex_families.values():
        for c in f.clusters:
            counted.update(c)
    for (u, v), f in C.edge_families.items():
        hit_idx = set(C.hits.get(((u, v), u), {})) | set(C.hits.get(((u, v), v), {}))
        for i, c in enumerate(f.clusters):
            if i not in hit_idx:
                counted.update(c)
    report["C4"] = (set(counted) == set(range(G.n))
                    and all(c == 1 for c in counted.values()))
    # B1/B2: reduced blow-ups equal the partite subgraphs, and satisfy the
    # predicate
    def blowup_equal(R, fam):
        B = Blowup(R, fam)
        expanded = B.expand()
        partite = partite_subgraph(G, fam)
        return set(expanded.edges) == set(partite.edges)

    ok1 = True
    for v, f in C.vertex_families.items():
        R = C.vertex_reduced[v]
        if predicate is not None and not predicate(R):
            ok1 = False
        if not blowup_equal(R, f):
            ok1 = False
    report["B1"] = ok1
    ok2 = True
    for e, f in C.edge_families.items():
        R = C.edge_reduced[e]
        if predicate is not None and not predicate(R):
            ok2 = False
        if not blowup_equal(R, f):
            ok2 = False
    report["B2"] = ok2
    report["valid"] = all(report[k] for k in ("C1", "C2", "C3", "C4", "B1", "B2"))
    return report
