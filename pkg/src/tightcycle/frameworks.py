"""Property graphs, robustness degrees, deletion hardening, framework
verification, booster and inheritance checks, and the threshold registry."""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

from .connectivity import (Automaton, Walk, arcs_to_closed_walk, connect_walk,
                           has_residue_one, is_dape, is_dcon, is_ucon, is_uape,
                           oriented_arcs, tight_components,
                           _shortest_loop_with_residue)
from .core import (BoundedDigraph, BoundedHypergraph, Hypergraph, min_degree)
from .errors import InputError, PreconditionError
from .fractional import (has_perfect_fractional_matching, is_dspa, is_uspa,
                         max_fractional_matching)


@dataclass(frozen=True)
class Predicate:
    """Named, deterministic, isomorphism-invariant graph test."""

    ident: str
    fn: object

    def __call__(self, sub) -> bool:
        return bool(self.fn(sub))


def _tight_connected(sub) -> bool:
    """No isolated vertices and a single tight component."""
    if isinstance(sub, (BoundedHypergraph, BoundedDigraph)):
        top = sub.layer(sub.k)
        edges = top.edges if isinstance(top, Hypergraph) else top
        host = sub if isinstance(sub, BoundedDigraph) else top
    else:
        host = sub
        edges = sub.edges
    if not edges:
        return False
    covered = set()
    for e in edges:
        covered.update(e)
    if covered != set(range(sub.n)):
        return False
    return len(tight_components(host).blocks) == 1


def _mindeg_predicate(d, delta):
    delta = Fraction(delta)

    def fn(sub):
        if isinstance(sub, (BoundedHypergraph, BoundedDigraph)):
            raise InputError("minimum-degree predicate expects a uniform hypergraph")
        if sub.n - d < sub.k - d or d >= sub.k:
            return False
        return min_degree(sub, d).relative >= delta

    return fn


STANDARD_PREDICATES = {
    "dcon": Predicate("dcon", is_dcon),
    "dspa": Predicate("dspa", is_dspa),
    "dape": Predicate("dape", is_dape),
    "ucon": Predicate("ucon", is_ucon),
    "uspa": Predicate("uspa", is_uspa),
    "uape": Predicate("uape", is_uape),
    "connected": Predicate("connected", _tight_connected),
    "nonempty": Predicate("nonempty", lambda sub: bool(
        sub.layer(sub.k).edges if isinstance(sub, BoundedHypergraph)
        else (sub.layer(sub.k) if isinstance(sub, BoundedDigraph) else sub.edges))),
    "aperiodic": Predicate("aperiodic", has_residue_one),
    "perfect-matching": Predicate("perfect-matching",
                                  lambda sub: has_perfect_fractional_matching(sub)),
}


def conjunction(*preds) -> Predicate:
    ident = "and(" + ",".join(p.ident for p in preds) + ")"
    return Predicate(ident, lambda sub: all(p(sub) for p in preds))


def del_q(P: Predicate, q) -> Predicate:
    """P after every deletion of at most q vertices."""
    if q < 0:
        raise InputError("deletion budget must be nonnegative")

    def fn(sub):
        verts = range(sub.n)
        for r in range(q + 1):
            for X in itertools.combinations(verts, r):
                rest = [v for v in verts if v not in X]
                if not P(sub.induced(rest)):
                    return False
        return True

    return Predicate(f"delq:q={q}({P.ident})", fn)


def parse_predicate(text: str) -> Predicate:
    """Parse predicate ids: name, name:k=v,..., and(...), delq:q=1(...)."""
    text = text.strip()
    if text.startswith("and(") and text.endswith(")"):
        inner = text[4:-1]
        parts = _split_args(inner)
        return conjunction(*(parse_predicate(p) for p in parts))
    if text.startswith("delq:"):
        rest = text[len("delq:"):]
        head, _, inner = rest.partition("(")
        if not inner.endswith(")"):
            raise InputError(f"bad delq predicate {text!r}")
        params = dict(kv.split("=") for kv in head.split(",") if kv)
        return del_q(parse_predicate(inner[:-1]), int(params["q"]))
    if text.startswith("mindeg:"):
        params = dict(kv.split("=") for kv in text[len("mindeg:"):].split(","))
        d = int(params["d"])
        delta = Fraction(params["delta"])
        return Predicate(text, _mindeg_predicate(d, delta))
    if text in STANDARD_PREDICATES:
        return STANDARD_PREDICATES[text]
    raise InputError(f"unknown predicate {text!r}")


def _split_args(inner):
    parts, depth, cur = [], 0, []
    for ch in inner:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return parts


# -- property graphs -----------------------------------------------------------

@dataclass(frozen=True)
class PropertyGraph:
    """s-sets whose induced subgraph satisfies the predicate."""

    host: object
    predicate: Predicate
    s: int
    mode: str                    # "exact" | "sampled"
    edges: frozenset = None      # exact mode
    samples: tuple = None        # sampled mode: ((s-set, verdict), ...)

    def degree(self, R):
        if self.mode != "exact":
            raise InputError("exact degrees require exact mode")
        R = frozenset(R)
        return sum(1 for S in self.edges if R <= set(S))


def property_graph(G, P: Predicate, s, mode="exact", seed=0, count=2000,
                   budget=2_000_000) -> PropertyGraph:
    if s < G.k:
        raise InputError("property uniformity below the host uniformity")
    n = G.n
    if mode == "exact":
        if comb(n, s) > budget:
            raise PreconditionError(f"C({n},{s}) exceeds the exact-mode budget")
        edges = frozenset(S for S in itertools.combinations(range(n), s)
                          if P(G.induced(S)))
        return PropertyGraph(G, P, s, "exact", edges=edges)
    rng = _random.Random(seed)
    samples = []
    verts = list(range(n))
    for _ in range(count):
        S = tuple(sorted(rng.sample(verts, s)))
        samples.append((S, P(G.induced(S))))
    return PropertyGraph(G, P, s, "sampled", samples=tuple(samples))


@dataclass(frozen=True)
class RobustnessReport:
    r: int
    s: int
    delta_required: Fraction
    min_r_degree: object          # int (exact) or (low, high) bound pair
    verdict: object               # bool, or None when indeterminate
    mode: str
    worst_r_set: tuple = None


def robustness(G, P: Predicate, s, r=None, delta=None, mode="exact",
               seed=0, count=400, confidence=0.99, budget=2_000_000):
    """Minimum r-degree of the property s-graph against delta*C(n-r, s-r)."""
    k = G.k
    r = 2 * k if r is None else r
    if r >= s:
        raise InputError("need r < s")
    delta = (1 - Fraction(1, s * s)) if delta is None else Fraction(delta)
    n = G.n
    denom = comb(n - r, s - r)
    if mode == "exact":
        PG = property_graph(G, P, s, mode="exact", budget=budget)
        degs = {R: 0 for R in itertools.combinations(range(n), r)}
        for S in PG.edges:
            for R in itertools.combinations(S, r):
                degs[R] += 1
        worst = min(degs, key=lambda R: (degs[R], R))
        mindeg = degs[worst]
        return RobustnessReport(r, s, delta, mindeg, Fraction(mindeg) >= delta * denom,
                                "exact", worst)
    rng = _random.Random(seed)
    worst_low, worst_high, worst_R = None, None, None
    verts = set(range(n))
    for R in itertools.combinations(range(n), r):
        rest = sorted(verts - set(R))
        hits = 0
        for _ in range(count):
            S = tuple(sorted(rng.sample(rest, s - r) + list(R)))
            if P(G.induced(S)):
                hits += 1
        low, high = _clopper_pearson(hits, count, confidence)
        if worst_low is None or low < worst_low:
            worst_low, worst_high, worst_R = low, high, R
    lo_deg = worst_low * denom
    hi_deg = worst_high * denom
    target = float(delta * denom)
    verdict = True if lo_deg >= target else (False if hi_deg < target else None)
    return RobustnessReport(r, s, delta, (lo_deg, hi_deg), verdict,
                            "sampled", worst_R)


def _clopper_pearson(successes, trials, confidence):
    from scipy.stats import beta as _beta
    alpha = 1 - confidence
    if successes == 0:
        low = 0.0
    else:
        low = float(_beta.ppf(alpha / 2, successes, trials - successes + 1))
    if successes == trials:
        high = 1.0
    else:
        high = float(_beta.ppf(1 - alpha / 2, successes + 1, trials - successes))
    return low, high


# -- framework verification ------------------------------------------------------

def _find_residue_one_walk(host) -> Walk | None:
    k = host.k
    auto = Automaton(oriented_arcs(host), k)
    for state in auto.states():
        loop = _shortest_loop_with_residue(auto, state, 1 % k, k)
        if loop is not None:
            return arcs_to_closed_walk(loop)
    return None


def check_framework(selector, G: Hypergraph, consistency=None) -> dict:
    """Verify connectivity, space, aperiodicity, and (optionally) consistency
    for the selected spanning subgraph; certificates are attached."""
    F = selector(G)
    if not isinstance(F, Hypergraph) or F.n != G.n or F.k != G.k:
        raise InputError("selector must return a subgraph on the same vertex set")
    if not F.edges <= G.edges:
        raise InputError("selector output is not a subgraph")
    report = {}
    covered = F.covered_vertices()
    cp = tight_components(F)
    report["F1"] = {"holds": bool(F.edges) and covered == set(range(F.n))
                    and len(cp.blocks) == 1,
                    "components": cp}
    m = max_fractional_matching(F)
    report["F2"] = {"holds": m.size == Fraction(F.n, F.k), "matching": m}
    walk = _find_residue_one_walk(F) if F.edges else None
    report["F3"] = {"holds": walk is not None and walk.order % F.k == 1 % F.k,
                    "walk": walk}
    if consistency is not None:
        J, x, y = consistency
        if J.n != G.n + 1:
            raise InputError("consistency host must have one more vertex")
        union_edges = set()
        for drop in (x, y):
            order = [v for v in range(J.n) if v != drop]
            sub = J.induced(order)
            Fsub = selector(sub)
            if not Fsub.edges <= sub.edges:
                raise InputError("selector output is not a subgraph")
            union_edges |= {tuple(sorted(order[i] for i in e)) for e in Fsub.edges}
        U = Hypergraph(J.n, J.k, frozenset(union_edges))
        ucp = tight_components(U)
        holds = bool(U.edges) and len(ucp.blocks) == 1 \
            and U.covered_vertices() == set(range(J.n))
        cert = None
        if holds and len(U.edges) >= 2:
            es = U.edge_list()
            cert = connect_walk(U, es[0], es[-1], max_order=4 ** (J.n))
        report["F4"] = {"holds": holds, "connecting_walk": cert}
    return report


# -- thresholds -------------------------------------------------------------------

class ThresholdRegistry:
    """Named exact constants used as gates."""

    _HF = {1: Fraction(1, 2), 2: Fraction(5, 9), 3: Fraction(5, 8)}

    @classmethod
    def hamilton_framework(cls, ell) -> Fraction:
        """Threshold for degree type d = k - ell."""
        if ell not in cls._HF:
            raise InputError(f"no registered threshold for codimension {ell}")
        return cls._HF[ell]

    @staticmethod
    def clique_walk(k, t) -> Fraction:
        return 1 - Fraction(1, comb(t - 1, k - 1) + comb(t - 2, k - 2))

    @staticmethod
    def matching_upper(s) -> Fraction:
        """Upper bound for the vertex-degree perfect-matching threshold."""
        return 1 - Fraction(1, s)


def compare_geq_one_minus_exp_neg_sqrt(value: Fraction, s):
    """Conservative verdict of `value >= 1 - exp(-sqrt(s))` by outward-rounded
    interval arithmetic; None when indeterminate at working precision."""
    with mpmath.workdps(60):
        iv = mpmath.iv.exp(-mpmath.iv.sqrt(mpmath.iv.mpf(s)))
        gap = mpmath.iv.mpf(1) - iv
        lo = Fraction(str(mpmath.mpf(gap.a)))
        hi = Fraction(str(mpmath.mpf(gap.b)))
    if value >= hi:
        return True
    if value < lo:
        return False
    return None


def verify_booster(G: BoundedDigraph, s1, r2, s2, q, eps=Fraction(1, 100),
                   budget=2_000_000) -> dict:
    """Empirical check of the deletion-hardening implication on one instance.

    Hypothesis: (delta_mat(s1)+eps, 2k-2, s1)-robustness of the conjunction
    of the directed predicates (using the registry's upper bound for the
    matching threshold, which makes the hypothesis check conservative).
    Conclusion: (1-exp(-sqrt(s2)), r2, s2)-robustness of the q-deletion
    hardening.
    """
    base = conjunction(STANDARD_PREDICATES["dcon"], STANDARD_PREDICATES["dspa"],
                       STANDARD_PREDICATES["dape"])
    k = G.k
    delta1 = ThresholdRegistry.matching_upper(s1) + eps
    hyp = robustness(G, base, s1, r=2 * k - 2, delta=delta1, budget=budget)
    report = {"hypothesis": hyp}
    if not hyp.verdict:
        report["implication_held"] = True
        report["note"] = "hypothesis false, implication vacuous"
        return report
    hard = del_q(base, q)
    concl = robustness(G, hard, s2, r=r2, delta=Fraction(0), budget=budget)
    denom = comb(G.n - r2, s2 - r2)
    ratio = Fraction(concl.min_r_degree, denom)
    verdict = compare_geq_one_minus_exp_neg_sqrt(ratio, s2)
    report["conclusion_min_degree"] = concl.min_r_degree
    report["conclusion_ratio"] = ratio
    report["conclusion"] = verdict
    report["implication_held"] = bool(verdict)
    return report


# -- inheritance -------------------------------------------------------------------

@dataclass(frozen=True)
class InheritanceReport:
    fraction: float
    low: float
    high: float
    samples: int
    exact_fraction: Fraction = None

    def contains_exact(self):
        if self.exact_fraction is None:
            return None
        return self.low <= float(self.exact_fraction) <= self.high


def inheritance_estimate(G: Hypergraph, d, delta, eps, s, samples, seed,
                         r=None, fixed_r_set=None, confidence=0.99,
                         exact=False) -> InheritanceReport:
    """Monte Carlo estimate of the fraction of s-sets (through a fixed r-set)
    whose induced subgraph keeps relative d-degree >= delta + eps/2."""
    if samples < 1:
        raise InputError("need at least one sample")
    delta, eps = Fraction(delta), Fraction(eps)
    r = 2 * G.k if r is None else r
    R = tuple(range(r)) if fixed_r_set is None else tuple(sorted(fixed_r_set))
    if len(R) != r or s > G.n or r >= s:
        raise InputError("bad r-set or sizes")
    thresh = delta + eps / 2

    def good(S):
        sub = G.induced(S)
        return min_degree(sub, d).relative >= thresh

    rng = _random.Random(seed)
    rest = sorted(set(range(G.n)) - set(R))
    hits = 0
    for _ in range(samples):
        S = tuple(sorted(rng.sample(rest, s - r) + list(R)))
        if good(S):
            hits += 1
    low, high = _clopper_pearson(hits, samples, confidence)
    exact_fraction = None
    if exact:
        total = 0
        goods = 0
        for extra in itertools.combinations(rest, s - r):
            total += 1
            if good(tuple(sorted(extra + R))):
                goods += 1
        exact_fraction = Fraction(goods, total)
    return InheritanceReport(hits / samples, low, high, samples, exact_fraction)


def degseq_member(G: Hypergraph, t, eps) -> bool:
    """Ascending degree sequence dominates (t-2)n/t + i + eps*n up to n/t."""
    if G.k != 2:
        raise InputError("degree-sequence membership is for 2-graphs")
    if t < 2:
        raise InputError("need t >= 2")
    eps = Fraction(eps)
    degs = sorted(G.degree({v}) for v in range(G.n))
    n = G.n
    for i in range(1, n // t + 1):
        if not Fraction(degs[i - 1]) > Fraction((t - 2) * n, t) + i + eps * n:
            return False
    return True
