"""The rule algebra over isomorphism classes of linear rules, and its
canonical action on graph-class state vectors.

Elements are finite linear combinations of rule classes with exact
rational coefficients (composition counts grow factorially, so floats
are banned here; state vectors may carry floats at the simulation
boundary).  The product of two basis elements sums the composites over
all admissible overlaps; the representation of a basis element acts on a
graph state by summing the rewrite results over all matches.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .canon import canonical_graph, graph_key
from .graph import Graph
from .homsearch import count_monos, iter_mono_maps
from .rules import LinearRule, UNIT_RULE, admissible_overlaps, compose_rules, rewrite


class RuleAlgebraElement:
    """A finite rational linear combination of rule isomorphism classes."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[LinearRule, Fraction | int]] = ()):
        collected: dict[str, tuple[LinearRule, Fraction]] = {}
        for rule, coeff in terms:
            coeff = Fraction(coeff)
            key = rule.key
            if key in collected:
                coeff = collected[key][1] + coeff
                rule = collected[key][0]
            if coeff == 0:
                collected.pop(key, None)
            else:
                collected[key] = (rule, coeff)
        object.__setattr__(self, "terms", collected)

    def __setattr__(self, name, value):
        raise AttributeError("RuleAlgebraElement is immutable")

    def __getstate__(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __setstate__(self, state):
        for name, value in state.items():
            object.__setattr__(self, name, value)

    def coefficient(self, rule: LinearRule) -> Fraction:
        entry = self.terms.get(rule.key)
        return entry[1] if entry else Fraction(0)

    def items(self):
        return [(rule, coeff) for rule, coeff in
                (self.terms[k] for k in sorted(self.terms))]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, RuleAlgebraElement):
            return NotImplemented
        return {k: c for k, (_, c) in self.terms.items()} == \
               {k: c for k, (_, c) in other.terms.items()}

    def __hash__(self):
        return hash(tuple(sorted((k, c) for k, (_, c) in self.terms.items())))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __rmul__(self, c):
        return scale(c, self)

    def __repr__(self):
        if not self.terms:
            return "RuleAlgebraElement(0)"
        return "RuleAlgebraElement(" + " + ".join(
            f"{c}*[{k}]" for k, (_, c) in sorted(self.terms.items())) + ")"


def delta(rule: LinearRule) -> RuleAlgebraElement:
    """The basis element of a rule's isomorphism class."""
    return RuleAlgebraElement([(rule, Fraction(1))])


def zero() -> RuleAlgebraElement:
    return RuleAlgebraElement()


def unit() -> RuleAlgebraElement:
    """The algebra unit: the class of the empty rule."""
    return delta(UNIT_RULE)


def add(a: RuleAlgebraElement, b: RuleAlgebraElement) -> RuleAlgebraElement:
    return RuleAlgebraElement(list(a.items()) + list(b.items()))


def scale(c, a: RuleAlgebraElement) -> RuleAlgebraElement:
    c = Fraction(c)
    return RuleAlgebraElement([(rule, c * coeff) for rule, coeff in a.items()])


def product(a: RuleAlgebraElement, b: RuleAlgebraElement) -> RuleAlgebraElement:
    """The algebra product: a after b, summed over admissible overlaps,
    extended bilinearly."""
    terms: list[tuple[LinearRule, Fraction]] = []
    for r2, c2 in a.items():
        for r1, c1 in b.items():
            c = c2 * c1
            for overlap in admissible_overlaps(r2, r1):
                terms.append((compose_rules(r2, overlap, r1), c))
    return RuleAlgebraElement(terms)


def commutator(a: RuleAlgebraElement, b: RuleAlgebraElement) -> RuleAlgebraElement:
    return add(product(a, b), scale(-1, product(b, a)))


def dump(a: RuleAlgebraElement) -> str:
    """Stable textual form: sorted canonical-key lines with coefficients."""
    return "\n".join(f"{k}\t{c}" for k, (_, c) in sorted(a.terms.items()))


# --- graph state vectors -------------------------------------------------

class GraphStateVector:
    """A finite linear combination of graph isomorphism classes."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[Graph, Fraction | int | float]] = ()):
        collected: dict[str, tuple[Graph, Fraction | float]] = {}
        for g, coeff in terms:
            if isinstance(coeff, int):
                coeff = Fraction(coeff)
            key = graph_key(g)
            if key in collected:
                g, prev = collected[key]
                coeff = prev + coeff
            else:
                g = canonical_graph(g)
            if coeff == 0:
                collected.pop(key, None)
            else:
                collected[key] = (g, coeff)
        object.__setattr__(self, "terms", collected)

    def __setattr__(self, name, value):
        raise AttributeError("GraphStateVector is immutable")

    def __getstate__(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __setstate__(self, state):
        for name, value in state.items():
            object.__setattr__(self, name, value)

    def coefficient(self, g: Graph):
        entry = self.terms.get(graph_key(g))
        return entry[1] if entry else Fraction(0)

    def items(self):
        return [(g, coeff) for g, coeff in
                (self.terms[k] for k in sorted(self.terms))]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, GraphStateVector):
            return NotImplemented
        return {k: c for k, (_, c) in self.terms.items()} == \
               {k: c for k, (_, c) in other.terms.items()}

    def __hash__(self):
        return hash(tuple(sorted((k, c) for k, (_, c) in self.terms.items())))

    def __add__(self, other):
        return GraphStateVector(list(self.items()) + list(other.items()))

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        return GraphStateVector([(g, c * coeff) for g, coeff in self.items()])

    def __repr__(self):
        if not self.terms:
            return "GraphStateVector(0)"
        return "GraphStateVector(" + " + ".join(
            f"{c}*|{k}>" for k, (_, c) in sorted(self.terms.items())) + ")"


def state(g: Graph) -> GraphStateVector:
    """The basis state of a graph's isomorphism class."""
    return GraphStateVector([(g, Fraction(1))])


def represent(a: RuleAlgebraElement, s: GraphStateVector) -> GraphStateVector:
    """The canonical action: each rule term maps |X> to the sum of its
    rewrite results over all matches."""
    terms: list[tuple[Graph, Fraction | float]] = []
    for rule, cr in a.items():
        for host, cs in s.items():
            c = cr * cs
            for vmap, emap in iter_mono_maps(rule.input, host):
                terms.append((rewrite(rule, host, vmap, emap), c))
    return GraphStateVector(terms)


def projection(s: GraphStateVector):
    """Sum of coefficients (the counting functional against which CTMC
    generators vanish)."""
    total = Fraction(0)
    for _, coeff in s.items():
        total = total + coeff
    return total


class Observable:
    """A motif-counting observable: the identity rule on the motif,
    acting diagonally with eigenvalue = number of embeddings."""

    __slots__ = ("motif", "rule")

    def __init__(self, motif: Graph):
        object.__setattr__(self, "motif", canonical_graph(motif))
        object.__setattr__(self, "rule", LinearRule.identity(self.motif))

    def __setattr__(self, name, value):
        raise AttributeError("Observable is immutable")

    def __getstate__(self):
        return {name: getattr(self, name) for name in self.__slots__}

    def __setstate__(self, state):
        for name, value in state.items():
            object.__setattr__(self, name, value)

    def __repr__(self):
        return f"Observable({graph_key(self.motif)})"


def eigenvalue(obs: Observable, x: Graph) -> int:
    return count_monos(obs.motif, x)


def observable_apply(obs: Observable, s: GraphStateVector) -> GraphStateVector:
    return GraphStateVector([(g, coeff * eigenvalue(obs, g)) for g, coeff in s.items()])


def correlator(observables: Sequence[Observable], s: GraphStateVector):
    """<O_1, ..., O_n> against the state: sum of coefficient times the
    product of eigenvalues over the support."""
    total = Fraction(0)
    for g, coeff in s.items():
        value = coeff
        for obs in observables:
            value = value * eigenvalue(obs, g)
        total = total + value
    return total
