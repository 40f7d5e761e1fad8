"""Brute-force oracles, independent of the constructions they cross-check.

Everything here is exhaustive and only meant for desk-scale inputs in
test suites: isomorphism by raw permutation search, pushout complements
by scanning all subgraphs, and the final pullback complement as the
largest pullback-complement subgraph.
"""

from __future__ import annotations

from itertools import permutations

from .category import Verdict, verify_square
from .graph import Graph, GraphError, GraphMorphism
from .homsearch import iter_subgraphs


def isomorphic_by_permutation(g: Graph, h: Graph) -> bool:
    """Exhaustive isomorphism check over all vertex bijections."""
    if g.n_vertices != h.n_vertices or g.n_edges != h.n_edges:
        return False
    g_pairs: dict[tuple[int, int], int] = {}
    for _, s, t in g.edge_items():
        g_pairs[(s, t)] = g_pairs.get((s, t), 0) + 1
    h_pairs: dict[tuple[int, int], int] = {}
    for _, s, t in h.edge_items():
        h_pairs[(s, t)] = h_pairs.get((s, t), 0) + 1
    for target in permutations(h.vertices):
        vmap = dict(zip(g.vertices, target))
        if all(h_pairs.get((vmap[s], vmap[t]), 0) == count
               for (s, t), count in g_pairs.items()):
            return True
    return False


def _forced_complement_maps(o: GraphMorphism, n: GraphMorphism, sub: Graph):
    """The only possible K -> sub morphism for a complement candidate,
    or None when it does not land inside."""
    k = o.dom
    vmap, emap = {}, {}
    sub_v, sub_e = set(sub.vertices), set(sub.edges)
    for v in k.vertices:
        w = n.vmap[o.vmap[v]]
        if w not in sub_v:
            return None
        vmap[v] = w
    for e in k.edges:
        f = n.emap[o.emap[e]]
        if f not in sub_e:
            return None
        emap[e] = f
    return vmap, emap


def pushout_complement_candidates(o: GraphMorphism, n: GraphMorphism):
    """All subgraphs of N completing K -> O -> N to a pushout square.

    A candidate square is a pushout of monos exactly when the images
    jointly cover N and intersect precisely in the image of K.
    """
    big_o, big_n = o.cod, n.cod
    img_v = {n.vmap[v] for v in big_o.vertices}
    img_e = {n.emap[e] for e in big_o.edges}
    glued_v = {n.vmap[o.vmap[v]] for v in o.dom.vertices}
    glued_e = {n.emap[o.emap[e]] for e in o.dom.edges}
    found = []
    for sub in iter_subgraphs(big_n):
        maps = _forced_complement_maps(o, n, sub)
        if maps is None:
            continue
        sub_v, sub_e = set(sub.vertices), set(sub.edges)
        if img_v | sub_v != set(big_n.vertices) or img_e | sub_e != set(big_n.edges):
            continue
        if img_v & sub_v != glued_v or img_e & sub_e != glued_e:
            continue
        vmap, emap = maps
        found.append((GraphMorphism(o.dom, sub, vmap, emap),
                      GraphMorphism.inclusion(sub, big_n)))
    return found


def brute_pushout_complement(o: GraphMorphism, n: GraphMorphism):
    """One pushout complement found by subgraph search, or None."""
    found = pushout_complement_candidates(o, n)
    return found[0] if found else None


def brute_fpc(i: GraphMorphism, m: GraphMorphism):
    """The final pullback complement as the largest pullback-complement
    subgraph of X, or None when no subgraph contains all others."""
    big_i, x = i.cod, m.cod
    candidates = []
    for sub in iter_subgraphs(x):
        maps = _forced_complement_maps(i, m, sub)
        if maps is None:
            continue
        vmap, emap = maps
        k_arrow = GraphMorphism(i.dom, sub, vmap, emap)
        incl = GraphMorphism.inclusion(sub, x)
        if verify_square("pullback", i, k_arrow, m, incl) is Verdict.HOLDS:
            candidates.append((sub, k_arrow, incl))
    best = None
    for sub, k_arrow, incl in candidates:
        if best is None or (set(best[0].vertices) <= set(sub.vertices)
                            and set(best[0].edges) <= set(sub.edges)):
            best = (sub, k_arrow, incl)
    if best is None:
        return None
    bv, be = set(best[0].vertices), set(best[0].edges)
    for sub, _, _ in candidates:
        if not (set(sub.vertices) <= bv and set(sub.edges) <= be):
            return None  # no single largest complement
    return best[1], best[2]


def squares_isomorphic(first, second) -> bool:
    """Complement squares agree up to an isomorphism commuting with both legs.

    Each argument is a (K -> Kbar, Kbar -> X) pair over the same K and X.
    """
    (k1, incl1), (k2, incl2) = first, second
    a, b = k1.cod, k2.cod
    if a.n_vertices != b.n_vertices or a.n_edges != b.n_edges:
        return False
    # legs into X are monic, so the comparison map is forced
    inv2_v = {w: v for v, w in incl2.vmap.items()}
    inv2_e = {w: e for e, w in incl2.emap.items()}
    vmap, emap = {}, {}
    for v in a.vertices:
        w = incl1.vmap[v]
        if w not in inv2_v:
            return False
        vmap[v] = inv2_v[w]
    for e in a.edges:
        f = incl1.emap[e]
        if f not in inv2_e:
            return False
        emap[e] = inv2_e[f]
    try:
        iso = GraphMorphism(a, b, vmap, emap)
    except GraphError:
        return False
    for v in k1.dom.vertices:
        if iso.vmap[k1.vmap[v]] != k2.vmap[v]:
            return False
    for e in k1.dom.edges:
        if iso.emap[k1.emap[e]] != k2.emap[e]:
            return False
    return True
