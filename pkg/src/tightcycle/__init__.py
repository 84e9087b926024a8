"""Tight-cycle machinery for hypergraphs.

Data types and constructions for uniform and k-bounded (di)hypergraphs,
tight connectivity and walk analysis, exact fractional matchings via
rational LP, integer edge lattices, robustness/property graphs, blow-up
covers, and constructive cycle/path allocation with independent verifiers.
"""

from .core import (BoundedDigraph, BoundedHypergraph, Hypergraph, build,
                   clique_graph, complete, generate, han_zhao, link,
                   min_degree, orientation_closure, parse, random_graph,
                   serialize, shadow, tight_cycle, tight_path, with_shadow)

__all__ = [
    "BoundedDigraph", "BoundedHypergraph", "Hypergraph", "build",
    "clique_graph", "complete", "generate", "han_zhao", "link",
    "min_degree", "orientation_closure", "parse", "random_graph",
    "serialize", "shadow", "tight_cycle", "tight_path", "with_shadow",
]

__version__ = "0.1.0"
