"""Finite directed multigraphs and injective graph morphisms.

Vertices and edges carry opaque non-negative integer ids drawn from two
independent namespaces.  Every morphism in this package is a monomorphism
(injective on vertices and on edges); this is checked at construction.
All values are immutable after construction and safe to share.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping


class GraphError(ValueError):
    """Raised for malformed graph, morphism, or JSON data."""


def validate_graph_data(vertices: Iterable[int], edges: Mapping[int, tuple[int, int]]) -> list[str]:
    """Check raw graph data against the invariants; return violation messages.

    An empty list means the data is a valid graph.  Only the first
    violation of each kind is reported.
    """
    violations: list[str] = []
    vlist = list(vertices)
    vset = set(vlist)
    if len(vlist) != len(vset):
        violations.append("duplicate vertex id")
    for v in vset:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            violations.append(f"vertex id {v!r} is not a non-negative integer")
            break
    for e in edges:
        if not isinstance(e, int) or isinstance(e, bool) or e < 0:
            violations.append(f"edge id {e!r} is not a non-negative integer")
            break
    if violations:
        return violations
    for e, (s, t) in sorted(edges.items()):
        if s not in vset:
            violations.append(f"edge {e}: src {s} is not a vertex")
            break
    for e, (s, t) in sorted(edges.items()):
        if t not in vset:
            violations.append(f"edge {e}: trg {t} is not a vertex")
            break
    return violations


def validate_graph(g: "Graph") -> list[str]:
    """Re-check a Graph's invariants; empty list means ok.

    Useful after internal fast-path construction; freshly constructed
    graphs always validate.
    """
    violations = validate_graph_data(g.vertices, {e: (g.src[e], g.trg[e]) for e in g.edges})
    if set(g.src) != set(g.edges) or set(g.trg) != set(g.edges):
        violations.append("src/trg maps are not total on the edge set")
    return violations


class Graph:
    """A finite directed multigraph: vertex ids, edge ids, src/trg maps."""

    __slots__ = ("vertices", "edges", "src", "trg", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Mapping[int, tuple[int, int]] | None = None):
        edges = dict(edges or {})
        violations = validate_graph_data(vertices, edges)
        if violations:
            raise GraphError("; ".join(violations))
        object.__setattr__(self, "vertices", tuple(sorted(set(vertices))))
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        object.__setattr__(self, "src", {e: edges[e][0] for e in self.edges})
        object.__setattr__(self, "trg", {e: edges[e][1] for e in self.edges})
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _unchecked(cls, vertices: tuple[int, ...], edges: tuple[int, ...],
                   src: dict[int, int], trg: dict[int, int]) -> "Graph":
        # Hot-path constructor for internally produced, already-valid data.
        g = object.__new__(cls)
        object.__setattr__(g, "vertices", vertices)
        object.__setattr__(g, "edges", edges)
        object.__setattr__(g, "src", src)
        object.__setattr__(g, "trg", trg)
        object.__setattr__(g, "_hash", None)
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __getstate__(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __setstate__(self, state):
        for name, value in state.items():
            object.__setattr__(self, name, value)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def size(self) -> int:
        """Total element count (vertices + edges), used by runaway guards."""
        return len(self.vertices) + len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.src[e], self.trg[e]

    def edge_items(self) -> Iterator[tuple[int, int, int]]:
        """Yield (edge id, src, trg) in edge-id order."""
        for e in self.edges:
            yield e, self.src[e], self.trg[e]

    def subgraph(self, vertices: Iterable[int], edges: Iterable[int]) -> "Graph":
        """The subgraph induced by the given vertex and edge id subsets."""
        vs = tuple(sorted(set(vertices)))
        vset = set(vs)
        es = tuple(sorted(set(edges)))
        for e in es:
            if self.src[e] not in vset or self.trg[e] not in vset:
                raise GraphError(f"edge {e} dangles out of the vertex subset")
        return Graph._unchecked(vs, es, {e: self.src[e] for e in es}, {e: self.trg[e] for e in es})

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.src == other.src and self.trg == other.trg)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vertices, tuple((e, self.src[e], self.trg[e]) for e in self.edges)))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        es = ",".join(f"{e}:{s}>{t}" for e, s, t in self.edge_items())
        return f"Graph(V={list(self.vertices)}, E=[{es}])"


EMPTY = Graph()


def discrete(n: int) -> Graph:
    """The edge-free graph on vertices 0..n-1."""
    return Graph(range(n))


def path(n: int) -> Graph:
    """The directed path 0 -> 1 -> ... -> n-1."""
    return Graph(range(n), {i: (i, i + 1) for i in range(n - 1)})


def cycle(n: int) -> Graph:
    """The directed n-cycle (n >= 1; n == 1 is a loop)."""
    if n < 1:
        raise GraphError("cycle needs at least one vertex")
    return Graph(range(n), {i: (i, (i + 1) % n) for i in range(n)})


def single_edge() -> Graph:
    """The graph 0 -> 1 with one edge (id 0)."""
    return Graph([0, 1], {0: (0, 1)})


class GraphMorphism:
    """An injective structure-preserving map between graphs."""

    __slots__ = ("dom", "cod", "vmap", "emap")

    def __init__(self, dom: Graph, cod: Graph, vmap: Mapping[int, int], emap: Mapping[int, int]):
        vmap = dict(vmap)
        emap = dict(emap)
        if set(vmap) != set(dom.vertices):
            raise GraphError("vmap is not total on the domain vertices")
        if set(emap) != set(dom.edges):
            raise GraphError("emap is not total on the domain edges")
        cod_v = set(cod.vertices)
        cod_e = set(cod.edges)
        if not set(vmap.values()) <= cod_v:
            raise GraphError("vmap image escapes the codomain")
        if not set(emap.values()) <= cod_e:
            raise GraphError("emap image escapes the codomain")
        if len(set(vmap.values())) != len(vmap) or len(set(emap.values())) != len(emap):
            raise GraphError("morphism is not injective")
        for e in dom.edges:
            if cod.src[emap[e]] != vmap[dom.src[e]] or cod.trg[emap[e]] != vmap[dom.trg[e]]:
                raise GraphError(f"edge {e}: src/trg not preserved")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "vmap", vmap)
        object.__setattr__(self, "emap", emap)

    @classmethod
    def _unchecked(cls, dom: Graph, cod: Graph, vmap: dict[int, int], emap: dict[int, int]) -> "GraphMorphism":
        m = object.__new__(cls)
        object.__setattr__(m, "dom", dom)
        object.__setattr__(m, "cod", cod)
        object.__setattr__(m, "vmap", vmap)
        object.__setattr__(m, "emap", emap)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("GraphMorphism is immutable")

    def __getstate__(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __setstate__(self, state):
        for name, value in state.items():
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls, g: Graph) -> "GraphMorphism":
        return cls._unchecked(g, g, {v: v for v in g.vertices}, {e: e for e in g.edges})

    @classmethod
    def inclusion(cls, sub: Graph, sup: Graph) -> "GraphMorphism":
        """The inclusion of a subgraph (same ids) into its supergraph."""
        if not (set(sub.vertices) <= set(sup.vertices) and set(sub.edges) <= set(sup.edges)):
            raise GraphError("not a subgraph")
        return cls(sub, sup, {v: v for v in sub.vertices}, {e: e for e in sub.edges})

    def then(self, other: "GraphMorphism") -> "GraphMorphism":
        """Composite self;other (apply self first)."""
        if other.dom != self.cod:
            raise GraphError("morphisms not composable")
        return GraphMorphism._unchecked(
            self.dom, other.cod,
            {v: other.vmap[w] for v, w in self.vmap.items()},
            {e: other.emap[f] for e, f in self.emap.items()})

    def vimage(self) -> set[int]:
        return set(self.vmap.values())

    def eimage(self) -> set[int]:
        return set(self.emap.values())

    def image_subgraph(self) -> Graph:
        return self.cod.subgraph(self.vmap.values(), self.emap.values())

    def is_identity(self) -> bool:
        return (self.dom == self.cod
                and all(v == w for v, w in self.vmap.items())
                and all(e == f for e, f in self.emap.items()))

    def __eq__(self, other):
        if not isinstance(other, GraphMorphism):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.vmap == other.vmap and self.emap == other.emap)

    def __hash__(self):
        return hash((self.dom, self.cod, tuple(sorted(self.vmap.items())), tuple(sorted(self.emap.items()))))

    def __repr__(self):
        return f"GraphMorphism(v={self.vmap}, e={self.emap})"


def same_maps(f: GraphMorphism, g: GraphMorphism) -> bool:
    """True when f and g agree as maps (same dom/cod assumed by caller)."""
    return f.vmap == g.vmap and f.emap == g.emap


class Span:
    """Two morphisms out of a shared apex: B <-left- A -right-> C."""

    __slots__ = ("left", "right")

    def __init__(self, left: GraphMorphism, right: GraphMorphism):
        if left.dom != right.dom:
            raise GraphError("span legs must share their apex graph")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, name, value):
        raise AttributeError("Span is immutable")

    def __getstate__(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __setstate__(self, state):
        for name, value in state.items():
            object.__setattr__(self, name, value)

    @property
    def apex(self) -> Graph:
        return self.left.dom


class Cospan:
    """Two morphisms into a shared foot: B -left-> A <-right- C."""

    __slots__ = ("left", "right")

    def __init__(self, left: GraphMorphism, right: GraphMorphism):
        if left.cod != right.cod:
            raise GraphError("cospan legs must share their foot graph")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, name, value):
        raise AttributeError("Cospan is immutable")

    def __getstate__(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __setstate__(self, state):
        for name, value in state.items():
            object.__setattr__(self, name, value)

    @property
    def foot(self) -> Graph:
        return self.left.cod


# --- JSON round-trip ---------------------------------------------------
#
# Graph:    {"vertices": [ids], "edges": [{"id": n, "src": n, "trg": n}]}
# Morphism: {"vmap": {"id": id}, "emap": {"id": id}}
#
# Emission is canonical (sorted ids, compact separators) so that
# load -> dump is byte-identical.

def graph_to_obj(g: Graph) -> dict:
    return {"vertices": list(g.vertices),
            "edges": [{"id": e, "src": s, "trg": t} for e, s, t in g.edge_items()]}


def graph_from_obj(obj) -> Graph:
    try:
        vertices = obj["vertices"]
        edges = {int(e["id"]): (int(e["src"]), int(e["trg"])) for e in obj["edges"]}
        vertices = [int(v) for v in vertices]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph object: {exc}") from exc
    if len(edges) != len(obj["edges"]):
        raise GraphError("duplicate edge id")
    return Graph(vertices, edges)


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_obj(g), separators=(",", ":"), sort_keys=True)


def graph_from_json(text: str) -> Graph:
    return graph_from_obj(json.loads(text))


def morphism_to_obj(m: GraphMorphism) -> dict:
    return {"vmap": {str(v): w for v, w in sorted(m.vmap.items())},
            "emap": {str(e): f for e, f in sorted(m.emap.items())}}


def morphism_from_obj(obj, dom: Graph, cod: Graph) -> GraphMorphism:
    try:
        vmap = {int(k): int(v) for k, v in obj["vmap"].items()}
        emap = {int(k): int(v) for k, v in obj["emap"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed morphism object: {exc}") from exc
    return GraphMorphism(dom, cod, vmap, emap)
