"""Seeded random graphs and rules for property suites and tests."""

from __future__ import annotations

import random

from .graph import Graph, GraphMorphism
from .rules import LinearRule


def random_graph(rnd: random.Random, max_vertices: int, max_edges: int,
                 min_vertices: int = 0, min_edges: int = 0) -> Graph:
    n = rnd.randint(min_vertices, max_vertices)
    if n == 0:
        return Graph()
    m = rnd.randint(min_edges, max_edges)
    edges = {i: (rnd.randrange(n), rnd.randrange(n)) for i in range(m)}
    return Graph(range(n), edges)


def random_supergraph(rnd: random.Random, base: Graph,
                      extra_vertices: int, extra_edges: int) -> Graph:
    """A supergraph of base (same ids) with some fresh vertices and edges."""
    voff = max(base.vertices, default=-1) + 1
    eoff = max(base.edges, default=-1) + 1
    vertices = list(base.vertices) + [voff + i for i in range(rnd.randint(0, extra_vertices))]
    edges = {e: (base.src[e], base.trg[e]) for e in base.edges}
    if vertices:
        for i in range(rnd.randint(0, extra_edges)):
            edges[eoff + i] = (rnd.choice(vertices), rnd.choice(vertices))
    return Graph(vertices, edges)


def random_rule(rnd: random.Random, max_context_vertices: int = 2,
                max_context_edges: int = 1, extra_vertices: int = 2,
                extra_edges: int = 1) -> LinearRule:
    """A random linear rule; both legs are subgraph inclusions of the context."""
    context = random_graph(rnd, max_context_vertices, max_context_edges)
    output = random_supergraph(rnd, context, extra_vertices, extra_edges)
    input_ = random_supergraph(rnd, context, extra_vertices, extra_edges)
    return LinearRule(output, context, input_,
                      GraphMorphism.inclusion(context, output),
                      GraphMorphism.inclusion(context, input_))
