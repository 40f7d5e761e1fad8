"""Enumeration of injective graph homomorphisms (and helpers around it).

The mono search backtracks over injective vertex assignments, pruning on
parallel-edge counts between already-assigned vertex pairs, then extends
each complete vertex map by all injective assignments of parallel edges.
Enumeration order is deterministic given the input labelings.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, combinations_with_replacement, permutations, product as iproduct
from math import perm
from typing import Iterator

from .graph import Graph, GraphMorphism
from .canon import graph_key


def _pair_counts(g: Graph) -> dict[tuple[int, int], list[int]]:
    by_pair: dict[tuple[int, int], list[int]] = {}
    for e, s, t in g.edge_items():
        by_pair.setdefault((s, t), []).append(e)
    return by_pair


def _vertex_order(a: Graph) -> list[int]:
    deg = Counter()
    for _, s, t in a.edge_items():
        deg[s] += 1
        deg[t] += 1
    return sorted(a.vertices, key=lambda v: (-deg[v], v))


def _iter_injective_vmaps(a: Graph, x: Graph) -> Iterator[dict[int, int]]:
    order = _vertex_order(a)
    a_pairs = _pair_counts(a)
    x_pairs = _pair_counts(x)

    def feasible(vmap, v, w):
        for (s, t), edges in a_pairs.items():
            if s == v and t == v:
                if len(x_pairs.get((w, w), ())) < len(edges):
                    return False
            elif s == v and t in vmap:
                if len(x_pairs.get((w, vmap[t]), ())) < len(edges):
                    return False
            elif t == v and s in vmap:
                if len(x_pairs.get((vmap[s], w), ())) < len(edges):
                    return False
        return True

    def extend(pos, vmap, used):
        if pos == len(order):
            yield dict(vmap)
            return
        v = order[pos]
        for w in x.vertices:
            if w in used or not feasible(vmap, v, w):
                continue
            vmap[v] = w
            used.add(w)
            yield from extend(pos + 1, vmap, used)
            del vmap[v]
            used.discard(w)

    yield from extend(0, {}, set())


def iter_mono_maps(a: Graph, x: Graph) -> Iterator[tuple[dict[int, int], dict[int, int]]]:
    """All injective homomorphisms a -> x as raw (vmap, emap) pairs."""
    a_pairs = sorted(_pair_counts(a).items())
    x_pairs = _pair_counts(x)
    for vmap in _iter_injective_vmaps(a, x):
        choices = []
        for (s, t), a_edges in a_pairs:
            hosts = x_pairs.get((vmap[s], vmap[t]), [])
            choices.append((a_edges, list(permutations(sorted(hosts), len(a_edges)))))
        if any(not perms for _, perms in choices):
            continue
        for combo in iproduct(*(perms for _, perms in choices)):
            emap: dict[int, int] = {}
            for (a_edges, _), assignment in zip(choices, combo):
                for ae, xe in zip(a_edges, assignment):
                    emap[ae] = xe
            yield vmap, emap


def count_monos(a: Graph, x: Graph) -> int:
    """Number of injective homomorphisms a -> x, without materializing them."""
    a_pairs = sorted(_pair_counts(a).items())
    x_pairs = _pair_counts(x)
    total = 0
    for vmap in _iter_injective_vmaps(a, x):
        n = 1
        for (s, t), a_edges in a_pairs:
            n *= perm(len(x_pairs.get((vmap[s], vmap[t]), ())), len(a_edges))
            if n == 0:
                break
        total += n
    return total


def enumerate_monos(a: Graph, x: Graph) -> list[GraphMorphism]:
    """Every injective homomorphism a -> x, distinct as maps, in a
    deterministic order."""
    return [GraphMorphism._unchecked(a, x, dict(v), e) for v, e in iter_mono_maps(a, x)]


def iter_hom_maps(a: Graph, x: Graph) -> Iterator[tuple[dict[int, int], dict[int, int]]]:
    """All (not necessarily injective) homomorphisms a -> x; oracle use only."""
    a_pairs = sorted(_pair_counts(a).items())
    x_pairs = _pair_counts(x)
    verts = list(a.vertices)
    for assignment in iproduct(x.vertices, repeat=len(verts)):
        vmap = dict(zip(verts, assignment))
        choices = []
        ok = True
        for (s, t), a_edges in a_pairs:
            hosts = x_pairs.get((vmap[s], vmap[t]), [])
            if not hosts:
                ok = False
                break
            choices.append((a_edges, hosts))
        if not ok:
            continue
        for combo in iproduct(*(iproduct(sorted(hosts), repeat=len(a_edges))
                                for a_edges, hosts in choices)):
            emap: dict[int, int] = {}
            for (a_edges, _), assigned in zip(choices, combo):
                for ae, xe in zip(a_edges, assigned):
                    emap[ae] = xe
            yield vmap, emap


def iter_subgraphs(g: Graph) -> Iterator[Graph]:
    """All subgraphs of g (vertex subset plus any edge subset it supports)."""
    vlist = list(g.vertices)
    for nv in range(len(vlist) + 1):
        for vsub in combinations(vlist, nv):
            vset = set(vsub)
            elig = [e for e in g.edges if g.src[e] in vset and g.trg[e] in vset]
            for ne in range(len(elig) + 1):
                for esub in combinations(elig, ne):
                    yield g.subgraph(vsub, esub)


def enumerate_graph_classes(max_vertices: int, max_edges: int) -> list[Graph]:
    """One representative per isomorphism class with the given size bounds.

    Exhaustive: all multigraphs (loops and parallel edges included) on at
    most max_vertices vertices with at most max_edges edges.
    """
    reps: dict[str, Graph] = {}
    for n in range(max_vertices + 1):
        pair_space = [(s, t) for s in range(n) for t in range(n)]
        for m in range(max_edges + 1):
            for pairs in combinations_with_replacement(pair_space, m):
                g = Graph(range(n), {i: pair for i, pair in enumerate(pairs)})
                key = graph_key(g)
                if key not in reps:
                    reps[key] = g
    return [reps[k] for k in sorted(reps)]
