"""Pushouts, pullbacks, complements, and square verification for FinGraph.

All constructions are restricted to monomorphisms (enforced by the
GraphMorphism type) and emit fresh ids deterministically: pushouts keep
the first leg's codomain ids and offset the second, pullbacks relabel
agreeing pairs from 0, complements are subgraphs keeping their host ids.

verify_square is a test oracle: it checks a square's defining universal
property by exhaustive enumeration of competitor squares.  Competitor
enumeration is reduced by image factorization (a violating competitor
always induces a violating competitor inside the reduced family), which
keeps the search finite without losing completeness:

  - pullback:  single-vertex / single-edge competitors, i.e. the pairwise
    comparison with the agreeing pairs of the cospan;
  - pushout:   quotients of B + C compatible with the span;
  - fpc:       subgraphs of the square's bottom-right object.

A caller-supplied competitor bound below what the reduction needs yields
an explicit INCONCLUSIVE verdict, never a silent pass.
"""

from __future__ import annotations

from enum import Enum
from itertools import combinations, product as iproduct

from .graph import Cospan, Graph, GraphError, GraphMorphism, Span


def pushout(f: GraphMorphism, g: GraphMorphism) -> Cospan:
    """Pushout of B <-f- K -g-> C: the cospan B -> P <- C.

    P glues B and C along K; B keeps its ids, C-only elements get
    offset ids.
    """
    if f.dom != g.dom:
        raise GraphError("pushout legs must share their domain")
    b, c = f.cod, g.cod
    voff = max(b.vertices, default=-1) + 1
    eoff = max(b.edges, default=-1) + 1
    g_inv_v = {w: k for k, w in g.vmap.items()}
    g_inv_e = {w: k for k, w in g.emap.items()}
    legc_v = {v: (f.vmap[g_inv_v[v]] if v in g_inv_v else voff + v) for v in c.vertices}
    legc_e = {e: (f.emap[g_inv_e[e]] if e in g_inv_e else eoff + e) for e in c.edges}
    vertices = list(b.vertices) + sorted(legc_v[v] for v in c.vertices if v not in g_inv_v)
    src = dict(b.src)
    trg = dict(b.trg)
    edges = list(b.edges)
    for e in c.edges:
        if e in g_inv_e:
            continue
        ne = legc_e[e]
        edges.append(ne)
        src[ne] = legc_v[c.src[e]]
        trg[ne] = legc_v[c.trg[e]]
    p = Graph._unchecked(tuple(sorted(vertices)), tuple(sorted(edges)), src, trg)
    legb = GraphMorphism._unchecked(b, p, {v: v for v in b.vertices}, {e: e for e in b.edges})
    legc = GraphMorphism._unchecked(c, p, legc_v, legc_e)
    return Cospan(legb, legc)


def pullback(f: GraphMorphism, g: GraphMorphism) -> Span:
    """Pullback of B -f-> D <-g- C: the span B <- P -> C of agreeing pairs."""
    if f.cod != g.cod:
        raise GraphError("pullback legs must share their codomain")
    b, c = f.dom, g.dom
    vpairs = sorted((vb, vc) for vb in b.vertices for vc in c.vertices
                    if f.vmap[vb] == g.vmap[vc])
    epairs = sorted((eb, ec) for eb in b.edges for ec in c.edges
                    if f.emap[eb] == g.emap[ec])
    vid = {pair: i for i, pair in enumerate(vpairs)}
    eid = {pair: i for i, pair in enumerate(epairs)}
    src = {}
    trg = {}
    for (eb, ec), i in eid.items():
        src[i] = vid[(b.src[eb], c.src[ec])]
        trg[i] = vid[(b.trg[eb], c.trg[ec])]
    p = Graph._unchecked(tuple(range(len(vpairs))), tuple(range(len(epairs))), src, trg)
    legb = GraphMorphism._unchecked(p, b, {i: pair[0] for pair, i in vid.items()},
                                    {i: pair[0] for pair, i in eid.items()})
    legc = GraphMorphism._unchecked(p, c, {i: pair[1] for pair, i in vid.items()},
                                    {i: pair[1] for pair, i in eid.items()})
    return Span(legb, legc)


def pushout_complement(o: GraphMorphism, n: GraphMorphism):
    """Complement of K -o-> O -n-> N, or None when the dangling condition fails.

    Returns (K -> Kbar, Kbar -> N) with pushout(o, K -> Kbar) = N; the
    monic case needs no identification condition, so absence of dangling
    edges is exactly constructibility.
    """
    if o.cod != n.dom:
        raise GraphError("pushout_complement arguments not composable")
    k, big_o, big_n = o.dom, o.cod, n.cod
    deleted_v = {n.vmap[v] for v in big_o.vertices if v not in o.vimage()}
    deleted_e = {n.emap[e] for e in big_o.edges if e not in o.eimage()}
    n_eimage = n.eimage()
    for e in big_n.edges:
        if e in n_eimage:
            continue
        if big_n.src[e] in deleted_v or big_n.trg[e] in deleted_v:
            return None
    kbar_v = tuple(v for v in big_n.vertices if v not in deleted_v)
    kbar_e = tuple(e for e in big_n.edges if e not in deleted_e)
    kbar = Graph._unchecked(kbar_v, kbar_e,
                            {e: big_n.src[e] for e in kbar_e},
                            {e: big_n.trg[e] for e in kbar_e})
    into = GraphMorphism._unchecked(
        k, kbar,
        {v: n.vmap[o.vmap[v]] for v in k.vertices},
        {e: n.emap[o.emap[e]] for e in k.edges})
    incl = GraphMorphism._unchecked(kbar, big_n,
                                    {v: v for v in kbar_v}, {e: e for e in kbar_e})
    return into, incl


def final_pullback_complement(i: GraphMorphism, m: GraphMorphism):
    """Final pullback complement of K -i-> I -m-> X.

    Kbar keeps everything of X except the images of deleted vertices,
    their incident edges, and the images of deleted edges.  Returns
    (K -> Kbar, Kbar -> X); always exists for composable monos.
    """
    if i.cod != m.dom:
        raise GraphError("final_pullback_complement arguments not composable")
    k, big_i, x = i.dom, i.cod, m.cod
    deleted_v = {m.vmap[v] for v in big_i.vertices if v not in i.vimage()}
    deleted_e = {m.emap[e] for e in big_i.edges if e not in i.eimage()}
    kbar_v = tuple(v for v in x.vertices if v not in deleted_v)
    kbar_vset = set(kbar_v)
    kbar_e = tuple(e for e in x.edges
                   if e not in deleted_e and x.src[e] in kbar_vset and x.trg[e] in kbar_vset)
    kbar = Graph._unchecked(kbar_v, kbar_e,
                            {e: x.src[e] for e in kbar_e},
                            {e: x.trg[e] for e in kbar_e})
    into = GraphMorphism._unchecked(
        k, kbar,
        {v: m.vmap[i.vmap[v]] for v in k.vertices},
        {e: m.emap[i.emap[e]] for e in k.edges})
    incl = GraphMorphism._unchecked(kbar, x, {v: v for v in kbar_v}, {e: e for e in kbar_e})
    return into, incl


# --- square verification ------------------------------------------------

class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"

    def __bool__(self):
        return self is Verdict.HOLDS


def _commutes(top, left, right, bottom) -> bool:
    for v in top.dom.vertices:
        if right.vmap[top.vmap[v]] != bottom.vmap[left.vmap[v]]:
            return False
    for e in top.dom.edges:
        if right.emap[top.emap[e]] != bottom.emap[left.emap[e]]:
            return False
    return True


def _check_pullback(top, left, right, bottom) -> Verdict:
    # Mediators from arbitrary competitors are determined pointwise, so
    # the pairwise comparison with the agreeing pairs is the full
    # universal property.
    a, b, c = top.dom, top.cod, left.cod
    vpairs = {(vb, vc) for vb in b.vertices for vc in c.vertices
              if right.vmap[vb] == bottom.vmap[vc]}
    epairs = {(eb, ec) for eb in b.edges for ec in c.edges
              if right.emap[eb] == bottom.emap[ec]}
    seen_v = set()
    for v in a.vertices:
        pair = (top.vmap[v], left.vmap[v])
        if pair in seen_v:
            return Verdict.FAILS
        seen_v.add(pair)
    seen_e = set()
    for e in a.edges:
        pair = (top.emap[e], left.emap[e])
        if pair in seen_e:
            return Verdict.FAILS
        seen_e.add(pair)
    if seen_v != vpairs or seen_e != epairs:
        return Verdict.FAILS
    return Verdict.HOLDS


def _set_partitions(items: list, max_blocks: int):
    """All partitions of items into at most max_blocks blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest, max_blocks):
        for idx in range(len(part)):
            yield [block + [first] if j == idx else block for j, block in enumerate(part)]
        if len(part) < max_blocks:
            yield part + [[first]]


def _seed_classes(k: Graph, f: GraphMorphism, g: GraphMorphism, kind: str):
    """Classes of B + C elements pre-merged by the span K."""
    if kind == "v":
        b_elems = [(0, v) for v in f.cod.vertices]
        c_elems = [(1, v) for v in g.cod.vertices]
        pairs = [((0, f.vmap[v]), (1, g.vmap[v])) for v in k.vertices]
    else:
        b_elems = [(0, e) for e in f.cod.edges]
        c_elems = [(1, e) for e in g.cod.edges]
        pairs = [((0, f.emap[e]), (1, g.emap[e])) for e in k.edges]
    parent = {x: x for x in b_elems + c_elems}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    classes: dict = {}
    for x in b_elems + c_elems:
        classes.setdefault(find(x), []).append(x)
    return sorted(classes.values())


def _check_pushout(top, left, right, bottom, max_vertices: int, max_edges: int) -> Verdict:
    a, b, c, d = top.dom, top.cod, left.cod, right.cod
    covered_b_v = right.vimage() | bottom.vimage()
    covered_b_e = right.eimage() | bottom.eimage()
    if covered_b_v != set(d.vertices) or covered_b_e != set(d.edges):
        return Verdict.FAILS  # legs of a graph pushout are jointly surjective
    vseeds = _seed_classes(a, top, left, "v")
    eseeds = _seed_classes(a, top, left, "e")
    covered = len(vseeds) <= max_vertices and len(eseeds) <= max_edges

    right_inv_v = {w: v for v, w in right.vmap.items()}
    right_inv_e = {w: e for e, w in right.emap.items()}
    bottom_inv_v = {w: v for v, w in bottom.vmap.items()}
    bottom_inv_e = {w: e for e, w in bottom.emap.items()}

    def elem_src(elem):
        side, e = elem
        return (side, (b if side == 0 else c).src[e])

    def elem_trg(elem):
        side, e = elem
        return (side, (b if side == 0 else c).trg[e])

    for vpart in _set_partitions(vseeds, max_vertices):
        vblock = {}
        for bi, block in enumerate(vpart):
            for cls in block:
                for elem in cls:
                    vblock[elem] = bi
        # group edge classes by their endpoint blocks; only same-profile
        # classes may merge further
        groups: dict[tuple[int, int], list] = {}
        for cls in eseeds:
            profile = (vblock[elem_src(cls[0])], vblock[elem_trg(cls[0])])
            groups.setdefault(profile, []).append(cls)
        group_keys = sorted(groups)
        group_parts = [list(_set_partitions(groups[key], max_edges)) for key in group_keys]
        for combo in iproduct(*group_parts):
            eblock = {}
            eprofile = []
            nb = 0
            for gi, part in enumerate(combo):
                for block in part:
                    for cls in block:
                        for elem in cls:
                            eblock[elem] = nb
                    eprofile.append(group_keys[gi])
                    nb += 1
            if nb > max_edges:
                continue
            # mediator D -> T is determined on leg images; it exists iff
            # it is single-valued and a graph morphism
            med_v = {}
            ok = True
            for dv in d.vertices:
                cands = set()
                if dv in right_inv_v:
                    cands.add(vblock[(0, right_inv_v[dv])])
                if dv in bottom_inv_v:
                    cands.add(vblock[(1, bottom_inv_v[dv])])
                if len(cands) != 1:
                    ok = False
                    break
                med_v[dv] = cands.pop()
            if ok:
                for de in d.edges:
                    cands = set()
                    if de in right_inv_e:
                        cands.add(eblock[(0, right_inv_e[de])])
                    if de in bottom_inv_e:
                        cands.add(eblock[(1, bottom_inv_e[de])])
                    if len(cands) != 1:
                        ok = False
                        break
                    be = cands.pop()
                    if eprofile[be] != (med_v[d.src[de]], med_v[d.trg[de]]):
                        ok = False
                        break
            if not ok:
                return Verdict.FAILS
    return Verdict.HOLDS if covered else Verdict.INCONCLUSIVE


def _check_fpc(top, left, right, bottom, max_vertices: int, max_edges: int) -> Verdict:
    # (left, bottom) as FPC of (top, right): condition (i) is the square
    # being a pullback; condition (ii) reduces to subgraph competitors of
    # the bottom-right object.
    if _check_pullback(top, left, right, bottom) is not Verdict.HOLDS:
        return Verdict.FAILS
    i, m, k, i_bar = top, right, left, bottom
    big_i, x, kbar = i.cod, m.cod, k.cod
    covered = x.n_vertices <= max_vertices and x.n_edges <= max_edges
    i_vimage, i_eimage = i.vimage(), i.eimage()
    i_inv_v = {w: v for v, w in i.vmap.items()}
    i_inv_e = {w: e for e, w in i.emap.items()}
    ibar_vimage, ibar_eimage = i_bar.vimage(), i_bar.eimage()
    ibar_inv_v = {w: v for v, w in i_bar.vmap.items()}
    ibar_inv_e = {w: e for e, w in i_bar.emap.items()}

    vlist = list(x.vertices)
    for nv in range(min(len(vlist), max_vertices) + 1):
        for vsub in combinations(vlist, nv):
            vset = set(vsub)
            elig = [e for e in x.edges if x.src[e] in vset and x.trg[e] in vset]
            for ne in range(min(len(elig), max_edges) + 1):
                for esub in combinations(elig, ne):
                    eset = set(esub)
                    # L = preimage of the subgraph under m
                    l_v = [v for v in big_i.vertices if m.vmap[v] in vset]
                    l_e = [e for e in big_i.edges if m.emap[e] in eset]
                    if not all(v in i_vimage for v in l_v):
                        continue
                    if not all(e in i_eimage for e in l_e):
                        continue
                    # the cone through K exists; a unique mediator must too
                    if not (vset <= ibar_vimage and eset <= ibar_eimage):
                        return Verdict.FAILS
                    for v in l_v:
                        if ibar_inv_v[m.vmap[v]] != k.vmap[i_inv_v[v]]:
                            return Verdict.FAILS
                    for e in l_e:
                        if ibar_inv_e[m.emap[e]] != k.emap[i_inv_e[e]]:
                            return Verdict.FAILS
    return Verdict.HOLDS if covered else Verdict.INCONCLUSIVE


def verify_square(kind: str, top: GraphMorphism, left: GraphMorphism,
                  right: GraphMorphism, bottom: GraphMorphism,
                  max_vertices: int | None = None,
                  max_edges: int | None = None) -> Verdict:
    """Verify a commuting square's universal property by enumeration.

    Square orientation::

            top
          A --> B
     left |     | right
          v     v
          C --> D
           bottom

    kind "pushout":  is (D; right, bottom) the pushout of (top, left)?
    kind "pullback": is (A; top, left) the pullback of (right, bottom)?
    kind "fpc":      is (left, bottom) the final pullback complement of
                     (top, right)?

    Competitor bounds default to the total square size plus two, which
    always covers the reduced competitor families; a smaller bound that
    fails to cover them yields Verdict.INCONCLUSIVE.
    """
    if top.dom != left.dom or top.cod != right.dom or left.cod != bottom.dom \
            or right.cod != bottom.cod:
        raise GraphError("square morphisms do not fit together")
    if not _commutes(top, left, right, bottom):
        return Verdict.FAILS
    objs = (top.dom, top.cod, left.cod, right.cod)
    if max_vertices is None:
        max_vertices = sum(g.n_vertices for g in objs) + 2
    if max_edges is None:
        max_edges = sum(g.n_edges for g in objs) + 2
    if kind == "pullback":
        return _check_pullback(top, left, right, bottom)
    if kind == "pushout":
        return _check_pushout(top, left, right, bottom, max_vertices, max_edges)
    if kind == "fpc":
        return _check_fpc(top, left, right, bottom, max_vertices, max_edges)
    raise ValueError(f"unknown square kind {kind!r}")
