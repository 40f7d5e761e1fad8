"""Exact canonical forms for graphs and for diagrams of graphs.

Strategy: encode the structure as a node-colored, arc-colored digraph
(multigraph edges become nodes with src/trg incidence arcs, so parallel
edges need no special casing), split into weakly connected components,
and canonicalize each component by color refinement plus
individualization search, taking the lexicographically minimal
serialization.  Exactness matters more than asymptotics at the scale
this package works at; the componentwise split keeps large edge-free or
sparse graphs cheap.

Diagrams (e.g. the span of a linear rule) are encoded the same way with
one color class per constituent graph and one arc color per morphism,
which makes two rules get equal keys exactly when they are isomorphic
as diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError, GraphMorphism

DEFAULT_COMPONENT_CUTOFF = 8


class CanonicalizationLimit(GraphError):
    """A weakly connected component exceeds the exactness cutoff."""


# --- generic colored-digraph canonicalization --------------------------

def _weak_components(n_nodes: int, arcs: list[tuple[int, int, int]]) -> list[list[int]]:
    parent = list(range(n_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in arcs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comps: dict[int, list[int]] = {}
    for x in range(n_nodes):
        comps.setdefault(find(x), []).append(x)
    return [sorted(c) for c in comps.values()]


def _refine(nodes, colors, out_adj, in_adj):
    # Iterated color refinement; colors may be arbitrary comparable values
    # and come back as dense integer ranks.  The signature leads with the
    # current color, so ranks stabilize one pass after the partition does.
    while True:
        sigs = {}
        for v in nodes:
            sigs[v] = (colors[v],
                       tuple(sorted((c, colors[u]) for u, c in out_adj[v])),
                       tuple(sorted((c, colors[u]) for u, c in in_adj[v])))
        rank = {s: i for i, s in enumerate(sorted(set(sigs.values())))}
        new = {v: rank[sigs[v]] for v in nodes}
        if new == colors:
            return new
        colors = new


def _serialize(order, base_colors, arcs):
    idx = {v: i for i, v in enumerate(order)}
    return (tuple(base_colors[v] for v in order),
            tuple(sorted((idx[u], idx[v], c) for u, v, c in arcs)))


def _canon_component(nodes, base_colors, arcs, out_adj, in_adj):
    """Minimal serialization and the node order attaining it."""
    best = None

    def descend(colors):
        nonlocal best
        colors = _refine(nodes, colors, out_adj, in_adj)
        cells: dict[int, list[int]] = {}
        for v in nodes:
            cells.setdefault(colors[v], []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            order = sorted(nodes, key=lambda v: colors[v])
            ser = _serialize(order, base_colors, arcs)
            if best is None or ser < best[0]:
                best = (ser, order)
            return
        for v in sorted(target):
            descend({u: (colors[u], 0 if u == v else 1) for u in nodes})

    descend({v: base_colors[v] for v in nodes})
    return best


def _canon_colored(n_nodes: int, base_colors: list[int], arcs: list[tuple[int, int, int]]):
    """Canonical order of an arc-colored digraph.

    Returns (key, order) where key is a hashable serialization equal for
    exactly the isomorphic inputs, and order lists node ids in canonical
    position order.
    """
    out_adj: list[list[tuple[int, int]]] = [[] for _ in range(n_nodes)]
    in_adj: list[list[tuple[int, int]]] = [[] for _ in range(n_nodes)]
    for u, v, c in arcs:
        out_adj[u].append((v, c))
        in_adj[v].append((u, c))
    comp_arcs: dict[int, list[tuple[int, int, int]]] = {}
    comps = _weak_components(n_nodes, arcs)
    node_comp = {}
    for i, comp in enumerate(comps):
        comp_arcs[i] = []
        for v in comp:
            node_comp[v] = i
    for u, v, c in arcs:
        comp_arcs[node_comp[u]].append((u, v, c))
    results = []
    for i, comp in enumerate(comps):
        ser, order = _canon_component(comp, base_colors, comp_arcs[i], out_adj, in_adj)
        results.append((ser, min(comp), order))
    results.sort(key=lambda r: (r[0], r[1]))
    key = tuple(r[0] for r in results)
    order = [v for r in results for v in r[2]]
    return key, order


# --- graphs -------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """A byte-exact isomorphism-class key plus the relabeling realizing it."""
    key: str
    vmap: dict[int, int]
    emap: dict[int, int]

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)


def _graph_nodes_arcs(g: Graph, vcolor: int, ecolor: int, voffset: int, eoffset: int):
    vindex = {v: voffset + i for i, v in enumerate(g.vertices)}
    eindex = {e: eoffset + i for i, e in enumerate(g.edges)}
    colors = {n: vcolor for n in vindex.values()}
    colors.update({n: ecolor for n in eindex.values()})
    arcs = []
    for e, s, t in g.edge_items():
        arcs.append((eindex[e], vindex[s], 0))
        arcs.append((eindex[e], vindex[t], 1))
    return vindex, eindex, colors, arcs


def _check_cutoff(g: Graph, cutoff: int):
    if g.n_vertices <= cutoff:
        return
    # componentwise exactness only needs each weak component under the cutoff
    vindex, _, _, arcs = _graph_nodes_arcs(g, 0, 1, 0, g.n_vertices)
    for comp in _weak_components(g.n_vertices + g.n_edges, arcs):
        nv = sum(1 for n in comp if n < g.n_vertices)
        if nv > cutoff:
            raise CanonicalizationLimit(
                f"component with {nv} vertices exceeds the exact-canonicalization cutoff {cutoff}")


def canonical_relabeling(g: Graph, cutoff: int = DEFAULT_COMPONENT_CUTOFF) -> tuple[dict[int, int], dict[int, int]]:
    """Maps vertex ids -> 0..n-1 and edge ids -> 0..m-1 canonically."""
    _check_cutoff(g, cutoff)
    vindex, eindex, colors, arcs = _graph_nodes_arcs(g, 0, 1, 0, g.n_vertices)
    n_nodes = g.n_vertices + g.n_edges
    _, order = _canon_colored(n_nodes, [colors[i] for i in range(n_nodes)], arcs)
    node_of_v = {n: v for v, n in vindex.items()}
    node_of_e = {n: e for e, n in eindex.items()}
    vmap, emap = {}, {}
    vi = ei = 0
    for node in order:
        if node in node_of_v:
            vmap[node_of_v[node]] = vi
            vi += 1
        else:
            emap[node_of_e[node]] = ei
            ei += 1
    return vmap, emap


def canonical_graph(g: Graph, cutoff: int = DEFAULT_COMPONENT_CUTOFF) -> Graph:
    """The canonical representative of g's isomorphism class."""
    vmap, emap = canonical_relabeling(g, cutoff)
    return Graph._unchecked(
        tuple(range(g.n_vertices)), tuple(range(g.n_edges)),
        {emap[e]: vmap[g.src[e]] for e in g.edges},
        {emap[e]: vmap[g.trg[e]] for e in g.edges})


def _key_of_canonical(cg: Graph) -> str:
    pairs = ",".join(f"{s}>{t}" for _, s, t in cg.edge_items())
    return f"{cg.n_vertices};{pairs}"


def canonical_form(g: Graph, cutoff: int = DEFAULT_COMPONENT_CUTOFF) -> CanonicalForm:
    """Canonical form of g; equal keys exactly characterize isomorphism."""
    vmap, emap = canonical_relabeling(g, cutoff)
    cg = Graph._unchecked(
        tuple(range(g.n_vertices)), tuple(range(g.n_edges)),
        {emap[e]: vmap[g.src[e]] for e in g.edges},
        {emap[e]: vmap[g.trg[e]] for e in g.edges})
    return CanonicalForm(_key_of_canonical(cg), vmap, emap)


def graph_key(g: Graph, cutoff: int = DEFAULT_COMPONENT_CUTOFF) -> str:
    return canonical_form(g, cutoff).key


def graphs_isomorphic(g: Graph, h: Graph) -> bool:
    if (g.n_vertices, g.n_edges) != (h.n_vertices, h.n_edges):
        return False
    return graph_key(g) == graph_key(h)


# --- diagrams -----------------------------------------------------------

def diagram_canonical(parts: list[Graph], arrows: list[tuple[int, int, GraphMorphism]]):
    """Canonical relabelings for a diagram of graphs and morphisms.

    parts[i] are the diagram objects (their position is their role);
    arrows are (from_index, to_index, morphism) with dom/cod matching the
    indexed parts.  Returns (key, relabelings) where relabelings[i] is the
    (vmap, emap) pair for parts[i], and key is a string equal for exactly
    the diagram-isomorphic inputs (same shape assumed).
    """
    for i, j, m in arrows:
        if m.dom != parts[i] or m.cod != parts[j]:
            raise GraphError("arrow endpoints do not match diagram parts")
    vindex, eindex, colors, arcs = [], [], {}, []
    voffsets, base = [], 0
    for i, g in enumerate(parts):
        vi, ei, cols, ars = _graph_nodes_arcs(g, 2 * i, 2 * i + 1, base, base + g.n_vertices)
        vindex.append(vi)
        eindex.append(ei)
        colors.update(cols)
        arcs.extend(ars)
        base += g.n_vertices + g.n_edges
    for a, (i, j, m) in enumerate(arrows):
        color = 2 + a
        for v, w in m.vmap.items():
            arcs.append((vindex[i][v], vindex[j][w], color))
        for e, f in m.emap.items():
            arcs.append((eindex[i][e], eindex[j][f], color))
    n_nodes = base
    _, order = _canon_colored(n_nodes, [colors[i] for i in range(n_nodes)], arcs)

    node_back = {}
    for i in range(len(parts)):
        for v, n in vindex[i].items():
            node_back[n] = (i, "v", v)
        for e, n in eindex[i].items():
            node_back[n] = (i, "e", e)
    relabelings = [({}, {}) for _ in parts]
    counters = [[0, 0] for _ in parts]
    for node in order:
        i, kind, orig = node_back[node]
        if kind == "v":
            relabelings[i][0][orig] = counters[i][0]
            counters[i][0] += 1
        else:
            relabelings[i][1][orig] = counters[i][1]
            counters[i][1] += 1

    chunks = []
    for i, g in enumerate(parts):
        vmap, emap = relabelings[i]
        edges = sorted((emap[e], vmap[g.src[e]], vmap[g.trg[e]]) for e in g.edges)
        chunks.append(f"{g.n_vertices}:" + ",".join(f"{s}>{t}" for _, s, t in edges))
    for a, (i, j, m) in enumerate(arrows):
        vmi, emi = relabelings[i]
        vmj, emj = relabelings[j]
        vpart = ",".join(str(img) for _, img in sorted((vmi[v], vmj[w]) for v, w in m.vmap.items()))
        epart = ",".join(str(img) for _, img in sorted((emi[e], emj[f]) for e, f in m.emap.items()))
        chunks.append(f"v{vpart};e{epart}")
    return "|".join(chunks), relabelings
