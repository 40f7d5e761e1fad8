"""Linear rewrite rules, direct derivations, and sequential rule composition.

A linear rule is a span of monomorphisms  output <-o- context -i-> input,
read right to left: the input pattern is matched, the context survives,
and the output is produced.  Applying a rule to a monic match first takes
the final pullback complement on the deletion side (so deletion in
unknown context removes incident edges implicitly), then a pushout on
the creation side.

Two rules compose along an overlap between the input of the outer rule
and the output of the inner one; an overlap is admissible exactly when
its pushout-complement square is constructible.  The composite rule
captures one interleaving of the two rules' effects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .canon import diagram_canonical
from .category import final_pullback_complement, pullback, pushout, pushout_complement
from .graph import (EMPTY, Graph, GraphError, GraphMorphism, graph_from_obj,
                    graph_to_obj, morphism_from_obj, morphism_to_obj)
from .homsearch import iter_mono_maps, iter_subgraphs


class LinearRule:
    """A span of monomorphisms output <- context -> input."""

    __slots__ = ("output", "context", "input", "o", "i", "_key")

    def __init__(self, output: Graph, context: Graph, input: Graph,
                 o: GraphMorphism, i: GraphMorphism):
        if o.dom != context or i.dom != context:
            raise GraphError("rule legs must share the context as domain")
        if o.cod != output or i.cod != input:
            raise GraphError("rule legs must land in output/input")
        object.__setattr__(self, "output", output)
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "input", input)
        object.__setattr__(self, "o", o)
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("LinearRule is immutable")

    def __getstate__(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __setstate__(self, state):
        for name, value in state.items():
            object.__setattr__(self, name, value)

    @classmethod
    def identity(cls, m: Graph) -> "LinearRule":
        ident = GraphMorphism.identity(m)
        return cls(m, m, m, ident, ident)

    @classmethod
    def from_inclusions(cls, output: Graph, context: Graph, input: Graph) -> "LinearRule":
        """Rule whose legs are subgraph inclusions (context ids shared)."""
        return cls(output, context, input,
                   GraphMorphism.inclusion(context, output),
                   GraphMorphism.inclusion(context, input))

    @property
    def key(self) -> str:
        """Canonical key; equal exactly for diagram-isomorphic rules."""
        k = self._key
        if k is None:
            k, _ = diagram_canonical([self.output, self.context, self.input],
                                     [(1, 0, self.o), (1, 2, self.i)])
            object.__setattr__(self, "_key", k)
        return k

    def canonical(self) -> "LinearRule":
        """The canonical representative of this rule's isomorphism class."""
        _, relab = diagram_canonical([self.output, self.context, self.input],
                                     [(1, 0, self.o), (1, 2, self.i)])
        graphs = []
        for g, (vm, em) in zip((self.output, self.context, self.input), relab):
            graphs.append(Graph._unchecked(
                tuple(range(g.n_vertices)), tuple(range(g.n_edges)),
                {em[e]: vm[g.src[e]] for e in g.edges},
                {em[e]: vm[g.trg[e]] for e in g.edges}))
        (ovm, oem), (kvm, kem), (ivm, iem) = relab
        o = GraphMorphism._unchecked(graphs[1], graphs[0],
                                     {kvm[v]: ovm[w] for v, w in self.o.vmap.items()},
                                     {kem[e]: oem[f] for e, f in self.o.emap.items()})
        i = GraphMorphism._unchecked(graphs[1], graphs[2],
                                     {kvm[v]: ivm[w] for v, w in self.i.vmap.items()},
                                     {kem[e]: iem[f] for e, f in self.i.emap.items()})
        return LinearRule(graphs[0], graphs[1], graphs[2], o, i)

    def is_isomorphic_to(self, other: "LinearRule") -> bool:
        return self.key == other.key

    def __repr__(self):
        return (f"LinearRule(O={self.output!r}, K={self.context!r}, I={self.input!r})")


@dataclass(frozen=True)
class Match:
    """A monic occurrence of a rule's input pattern in a host graph."""
    rule: LinearRule
    host: Graph
    m: GraphMorphism

    def __post_init__(self):
        if self.m.dom != self.rule.input or self.m.cod != self.host:
            raise GraphError("match morphism must map the rule input into the host")


def matches(rule: LinearRule, host: Graph) -> list[Match]:
    """All monic matches of the rule's input in the host, in deterministic order."""
    return [Match(rule, host, GraphMorphism._unchecked(rule.input, host, dict(v), e))
            for v, e in iter_mono_maps(rule.input, host)]


@dataclass(frozen=True)
class DirectDerivation:
    """One rewrite step: the two squares built from a rule and a match.

    Left square (creation side) is a pushout, right square (deletion
    side) a final pullback complement::

        output <--o-- context --i--> input
          |             |              |
        m_star          k              m
          v             v              v
        result <-o_bar- kbar  -i_bar-> host
    """
    match: Match
    k: GraphMorphism
    i_bar: GraphMorphism
    m_star: GraphMorphism
    o_bar: GraphMorphism

    @property
    def intermediate(self) -> Graph:
        return self.k.cod

    @property
    def result(self) -> Graph:
        return self.m_star.cod

    def left_square(self):
        """(top, left, right, bottom) of the pushout square."""
        return self.match.rule.o, self.k, self.m_star, self.o_bar

    def right_square(self):
        """(top, left, right, bottom) of the FPC square."""
        return self.match.rule.i, self.k, self.match.m, self.i_bar


def apply_rule(rule: LinearRule, match: Match) -> DirectDerivation:
    """Rewrite the match's host along the rule (FPC, then pushout)."""
    k, i_bar = final_pullback_complement(rule.i, match.m)
    po = pushout(rule.o, k)
    return DirectDerivation(match, k, i_bar, po.left, po.right)


def rewrite(rule: LinearRule, host: Graph, vmap: dict[int, int], emap: dict[int, int]) -> Graph:
    """Result graph of one rewrite step, skipping the derivation bookkeeping.

    vmap/emap are a monic match of rule.input into host; equivalent to
    apply_rule(...).result but allocation-lean for simulation loops.
    """
    rule_i = rule.i
    keep_v, keep_e = rule_i.vimage(), rule_i.eimage()
    deleted_v = {vmap[v] for v in rule.input.vertices if v not in keep_v}
    deleted_e = {emap[e] for e in rule.input.edges if e not in keep_e}
    kbar_v = [v for v in host.vertices if v not in deleted_v]
    kbar_e = [e for e in host.edges
              if e not in deleted_e
              and host.src[e] not in deleted_v and host.trg[e] not in deleted_v]
    out = rule.output
    # context elements land at their output ids; untouched host elements
    # are offset past them
    voff = max(out.vertices, default=-1) + 1
    eoff = max(out.edges, default=-1) + 1
    glue_v = {vmap[rule_i.vmap[kv]]: rule.o.vmap[kv] for kv in rule.context.vertices}
    glue_e = {emap[rule_i.emap[ke]]: rule.o.emap[ke] for ke in rule.context.edges}
    new_v = {v: glue_v.get(v, voff + v) for v in kbar_v}
    vertices = list(out.vertices) + sorted(new_v[v] for v in kbar_v if v not in glue_v)
    src = dict(out.src)
    trg = dict(out.trg)
    edges = list(out.edges)
    for e in kbar_e:
        if e in glue_e:
            continue
        ne = eoff + e
        edges.append(ne)
        src[ne] = new_v[host.src[e]]
        trg[ne] = new_v[host.trg[e]]
    return Graph._unchecked(tuple(sorted(vertices)), tuple(sorted(edges)), src, trg)


@dataclass(frozen=True)
class Overlap:
    """A span input2 <-m2- overlap -m1-> output1 between two rules.

    Overlaps are enumerated as (subgraph of input2, mono into output1)
    pairs, which hits every span isomorphism class exactly once; the
    admissible flag records pushout-complement constructibility.
    """
    p2: LinearRule
    p1: LinearRule
    m2: GraphMorphism
    m1: GraphMorphism
    admissible: bool

    @property
    def apex(self) -> Graph:
        return self.m2.dom


def _overlap_admissible(p1: LinearRule, m2: GraphMorphism, m1: GraphMorphism) -> bool:
    n1 = pushout(m2, m1).right
    return pushout_complement(p1.o, n1) is not None


def admissible_overlaps(p2: LinearRule, p1: LinearRule) -> list[Overlap]:
    """All admissible overlaps of p2's input with p1's output."""
    out = []
    for m in iter_subgraphs(p2.input):
        m2 = GraphMorphism.inclusion(m, p2.input)
        for vmap, emap in iter_mono_maps(m, p1.output):
            m1 = GraphMorphism._unchecked(m, p1.output, dict(vmap), emap)
            if _overlap_admissible(p1, m2, m1):
                out.append(Overlap(p2, p1, m2, m1, True))
    return out


def compose_rules(p2: LinearRule, overlap: Overlap, p1: LinearRule) -> LinearRule:
    """The sequential composite of p2 after p1 along an admissible overlap."""
    po_n = pushout(overlap.m2, overlap.m1)
    n2, n1 = po_n.left, po_n.right
    poc = pushout_complement(p1.o, n1)
    if poc is None:
        raise GraphError("overlap is not admissible")
    k1, incl1 = poc
    po_i = pushout(p1.i, k1)
    i1_prime = po_i.right
    k2, i2_prime = final_pullback_complement(p2.i, n2)
    po_o = pushout(p2.o, k2)
    o2_prime = po_o.right
    pb = pullback(i2_prime, incl1)
    o21 = pb.left.then(o2_prime)
    i21 = pb.right.then(i1_prime)
    return LinearRule(po_o.foot, pb.apex, po_i.foot, o21, i21)


# --- JSON and the shipped rule library ----------------------------------

def rule_to_obj(rule: LinearRule) -> dict:
    return {"output": graph_to_obj(rule.output),
            "context": graph_to_obj(rule.context),
            "input": graph_to_obj(rule.input),
            "o": morphism_to_obj(rule.o),
            "i": morphism_to_obj(rule.i)}


def rule_from_obj(obj) -> LinearRule:
    try:
        output = graph_from_obj(obj["output"])
        context = graph_from_obj(obj["context"])
        input_ = graph_from_obj(obj["input"])
        o = morphism_from_obj(obj["o"], context, output)
        i = morphism_from_obj(obj["i"], context, input_)
    except KeyError as exc:
        raise GraphError(f"rule object missing field {exc}") from exc
    return LinearRule(output, context, input_, o, i)


def rule_to_json(rule: LinearRule) -> str:
    return json.dumps(rule_to_obj(rule), separators=(",", ":"), sort_keys=True)


def rule_from_json(text: str) -> LinearRule:
    return rule_from_obj(json.loads(text))


_LIBRARY: dict[str, LinearRule] | None = None


def library() -> dict[str, LinearRule]:
    """The shipped named rules (vertex/edge creation and deletion etc.)."""
    global _LIBRARY
    if _LIBRARY is None:
        text = resources.files("sqpo").joinpath("data/rules_library.json").read_text()
        _LIBRARY = {name: rule_from_obj(obj) for name, obj in json.loads(text).items()}
    return _LIBRARY


def library_rule(name: str) -> LinearRule:
    try:
        return library()[name]
    except KeyError:
        raise GraphError(f"unknown library rule {name!r}; have {sorted(library())}") from None


UNIT_RULE = LinearRule(EMPTY, EMPTY, EMPTY,
                       GraphMorphism.identity(EMPTY), GraphMorphism.identity(EMPTY))
