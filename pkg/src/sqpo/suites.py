"""Property suites behind the `verify` subcommand and the acceptance tests.

Each suite exercises one family of the package's structural guarantees
(square universal properties, associativity, concurrency/homomorphism,
jump closure, unit laws) and reports per-check pass/fail/inconclusive
results with counterexample detail on failure.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field

from .algebra import delta, product, projection, represent, state, unit
from .canon import graph_key
from .category import Verdict, final_pullback_complement, pushout, pushout_complement, verify_square
from .graph import Graph, GraphMorphism, graph_to_json
from .homsearch import count_monos, enumerate_graph_classes, iter_subgraphs
from .oracles import brute_fpc, brute_pushout_complement, squares_isomorphic
from .randgen import random_graph, random_rule, random_supergraph
from .rules import LinearRule, admissible_overlaps, apply_rule, compose_rules, library, matches, rule_to_json


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "inconclusive"
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    results: list[CheckResult] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = ""):
        self.results.append(CheckResult(name, "pass" if ok else "fail", detail))

    def record_verdict(self, name: str, verdict: Verdict, detail: str = ""):
        status = {Verdict.HOLDS: "pass", Verdict.FAILS: "fail",
                  Verdict.INCONCLUSIVE: "inconclusive"}[verdict]
        self.results.append(CheckResult(name, status, detail))

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def counts(self) -> dict[str, int]:
        c = {"pass": 0, "fail": 0, "inconclusive": 0}
        for r in self.results:
            c[r.status] += 1
        return c

    def lines(self, verbose: bool = False) -> list[str]:
        out = []
        for r in self.results:
            if verbose or r.status != "pass":
                detail = f"  {r.detail}" if r.detail else ""
                out.append(f"[{r.status.upper():12}] {self.suite}: {r.name}{detail}")
        c = self.counts()
        out.append(f"suite {self.suite}: {c['pass']} passed, {c['fail']} failed, "
                   f"{c['inconclusive']} inconclusive")
        return out


def _chain_detail(k: Graph, i: Graph, x: Graph) -> str:
    return f"K={graph_to_json(k)} I={graph_to_json(i)} X={graph_to_json(x)}"


def fpc_suite(size_bound: int = 3, n_random: int = 50, seed: int = 7) -> SuiteReport:
    """Square-construction guarantees.

    Sweeps every subgraph chain K <= I <= X over all host classes with at
    most size_bound vertices and edges: the constructed final pullback
    complement must satisfy its universal property and agree with the
    brute-force search.  Also checks, on seeded random material, that
    pushout squares are pullbacks and final pullback complements, that
    pushout-complement constructibility agrees with brute-force subgraph
    search, and that derivation squares have their defining properties.
    """
    report = SuiteReport("fpc")
    rnd = random.Random(seed)

    bad = 0
    checked = 0
    for x in enumerate_graph_classes(size_bound, size_bound):
        for i_sub in iter_subgraphs(x):
            inc_ix = GraphMorphism.inclusion(i_sub, x)
            for k_sub in iter_subgraphs(i_sub):
                inc_ki = GraphMorphism.inclusion(k_sub, i_sub)
                checked += 1
                k_arrow, incl = final_pullback_complement(inc_ki, inc_ix)
                verdict = verify_square("fpc", inc_ki, k_arrow, inc_ix, incl)
                if verdict is not Verdict.HOLDS:
                    bad += 1
                    report.record_verdict("fpc universal property", verdict,
                                          _chain_detail(k_sub, i_sub, x))
                    continue
                found = brute_fpc(inc_ki, inc_ix)
                if found is None or not squares_isomorphic((k_arrow, incl), found):
                    bad += 1
                    report.record("fpc formula vs brute-force search", False,
                                  _chain_detail(k_sub, i_sub, x))
    report.record(f"fpc sweep over {checked} chains (hosts <= {size_bound}v/{size_bound}e)",
                  bad == 0)

    # pushout squares along monos are pullbacks and FPCs; POC agrees with
    # brute-force search
    for trial in range(n_random):
        k = random_graph(rnd, 2, 1)
        b = _random_supergraph_mono(rnd, k)
        c = _random_supergraph_mono(rnd, k)
        po = pushout(b, c)
        pb_v = verify_square("pullback", b, c, po.left, po.right)
        fpc_v = verify_square("fpc", b, c, po.left, po.right)
        if pb_v is not Verdict.HOLDS or fpc_v is not Verdict.HOLDS:
            report.record("pushout square is pullback and fpc", False,
                          f"trial {trial}")
    report.record(f"pushout squares pass pullback+fpc checks ({n_random} random)", True)

    poc_bad = 0
    for trial in range(n_random):
        k = random_graph(rnd, 2, 1)
        o_arrow = _random_supergraph_mono(rnd, k)
        n_arrow = _random_supergraph_mono(rnd, o_arrow.cod, extra_e=2)
        constructed = pushout_complement(o_arrow, n_arrow)
        brute = brute_pushout_complement(o_arrow, n_arrow)
        if (constructed is None) != (brute is None):
            poc_bad += 1
            report.record("pushout complement vs brute-force search", False, f"trial {trial}")
        elif constructed is not None and not squares_isomorphic(constructed, brute):
            poc_bad += 1
            report.record("pushout complement isomorphic to brute-force one", False,
                          f"trial {trial}")
    report.record(f"pushout complement agrees with brute-force search ({n_random} random)",
                  poc_bad == 0)

    deriv_bad = 0
    for trial in range(n_random):
        rule = random_rule(rnd, 2, 1, 1, 1)
        host = random_graph(rnd, 4, 3, min_vertices=1)
        for m in matches(rule, host)[:3]:
            d = apply_rule(rule, m)
            if verify_square("pushout", *d.left_square()) is not Verdict.HOLDS:
                deriv_bad += 1
                report.record("derivation left square is a pushout", False, f"trial {trial}")
            if verify_square("fpc", *d.right_square()) is not Verdict.HOLDS:
                deriv_bad += 1
                report.record("derivation right square is an fpc", False, f"trial {trial}")
    report.record(f"derivation squares verify ({n_random} random hosts)", deriv_bad == 0)
    return report


def _random_supergraph_mono(rnd: random.Random, base: Graph, extra_v: int = 2,
                            extra_e: int = 1) -> GraphMorphism:
    sup = random_supergraph(rnd, base, extra_v, extra_e)
    return GraphMorphism.inclusion(base, sup)


def assoc_suite(n_random: int = 100, seed: int = 7) -> SuiteReport:
    """Exact associativity of the algebra product."""
    report = SuiteReport("assoc")
    lib = library()
    names = sorted(lib)
    bad = 0
    for na, nb, nc in itertools.product(names, repeat=3):
        a, b, c = delta(lib[na]), delta(lib[nb]), delta(lib[nc])
        if product(product(a, b), c) != product(a, product(b, c)):
            bad += 1
            report.record("associativity on library triple", False, f"({na}, {nb}, {nc})")
    report.record(f"associativity on all {len(names) ** 3} library triples", bad == 0)

    rnd = random.Random(seed)
    bad = 0
    for trial in range(n_random):
        a = delta(random_rule(rnd, 2, 1, 2, 1))
        b = delta(random_rule(rnd, 2, 1, 2, 1))
        c = delta(random_rule(rnd, 2, 1, 2, 1))
        if product(product(a, b), c) != product(a, product(b, c)):
            bad += 1
            report.record("associativity on random triple", False, f"trial {trial}")
    report.record(f"associativity on {n_random} random triples", bad == 0)
    return report


def concurrency_suite(n_random: int = 200, seed: int = 11,
                      max_host_vertices: int = 5) -> SuiteReport:
    """Composite rules against two-step derivations, and the induced
    homomorphism property of the representation."""
    report = SuiteReport("concurrency")
    rnd = random.Random(seed)
    bad = 0
    active = 0
    for trial in range(n_random):
        p1 = random_rule(rnd, 2, 1, 2, 1)
        p2 = random_rule(rnd, 2, 1, 2, 1)
        x = random_graph(rnd, max_host_vertices, max_host_vertices, min_vertices=2, min_edges=1)
        two_step: Counter = Counter()
        for m1 in matches(p1, x):
            x1 = apply_rule(p1, m1).result
            for m2 in matches(p2, x1):
                two_step[graph_key(apply_rule(p2, m2).result)] += 1
        composite: Counter = Counter()
        for ov in admissible_overlaps(p2, p1):
            q = compose_rules(p2, ov, p1)
            for n in matches(q, x):
                composite[graph_key(apply_rule(q, n).result)] += 1
        if two_step:
            active += 1
        if two_step != composite:
            bad += 1
            report.record("two-step multiset equals composite multiset", False,
                          f"trial {trial}: p1={rule_to_json(p1)} p2={rule_to_json(p2)} "
                          f"X={graph_to_json(x)}")
    report.record(f"concurrency multisets on {n_random} random cases", bad == 0)
    report.record(f"concurrency coverage: {active} active cases", active >= n_random // 10,
                  f"{active}/{n_random} cases had at least one two-step derivation")

    bad = 0
    for trial in range(n_random):
        a = delta(random_rule(rnd, 2, 1, 2, 1))
        b = delta(random_rule(rnd, 2, 1, 2, 1))
        x = state(random_graph(rnd, max_host_vertices, max_host_vertices,
                               min_vertices=1, min_edges=0))
        if represent(product(a, b), x) != represent(a, represent(b, x)):
            bad += 1
            report.record("representation homomorphism", False, f"trial {trial}")
    report.record(f"representation homomorphism on {n_random} random cases", bad == 0)
    return report


def jump_suite(n_random: int = 200, seed: int = 13, size_bound: int = 5) -> SuiteReport:
    """Jump closure and diagonality of motif observables."""
    report = SuiteReport("jump")
    rnd = random.Random(seed)
    bad = 0
    for trial in range(n_random):
        p = random_rule(rnd, 2, 1, 2, 1)
        x = random_graph(rnd, size_bound, size_bound, min_vertices=1)
        got = projection(represent(delta(p), state(x)))
        want = count_monos(p.input, x)
        if got != want:
            bad += 1
            report.record("jump closure", False, f"trial {trial}: {got} != {want}")
    report.record(f"jump closure on {n_random} random (rule, host) pairs", bad == 0)

    bad = 0
    for trial in range(n_random // 2):
        motif = random_graph(rnd, 3, 2)
        x = random_graph(rnd, size_bound, size_bound, min_vertices=1)
        got = represent(delta(LinearRule.identity(motif)), state(x))
        want = count_monos(motif, x) * state(x)
        if got != want:
            bad += 1
            report.record("identity rules act diagonally", False, f"trial {trial}")
    report.record(f"diagonality on {n_random // 2} random (motif, host) pairs", bad == 0)
    return report


def unit_suite(n_random: int = 50, seed: int = 17) -> SuiteReport:
    """The empty rule is a two-sided unit for the product."""
    report = SuiteReport("unit")
    one = unit()
    bad = 0
    for name, rule in sorted(library().items()):
        r = delta(rule)
        if product(one, r) != r or product(r, one) != r:
            bad += 1
            report.record("unit law on library rule", False, name)
    report.record("unit laws on all library rules", bad == 0)

    rnd = random.Random(seed)
    bad = 0
    for trial in range(n_random):
        r = delta(random_rule(rnd))
        if product(one, r) != r or product(r, one) != r:
            bad += 1
            report.record("unit law on random rule", False, f"trial {trial}")
    if n_random:
        report.record(f"unit laws on {n_random} random rules", bad == 0)
    report.record("unit element is idempotent", product(one, one) == one)
    return report


SUITES = {
    "fpc": fpc_suite,
    "assoc": assoc_suite,
    "concurrency": concurrency_suite,
    "jump": jump_suite,
    "unit": unit_suite,
}


def run_suite(name: str, size_bound: int | None = None, n_random: int | None = None,
              seed: int | None = None) -> SuiteReport:
    kwargs = {}
    if seed is not None:
        kwargs["seed"] = seed
    if name == "fpc":
        if size_bound is not None:
            kwargs["size_bound"] = size_bound
        if n_random is not None:
            kwargs["n_random"] = n_random
    elif name in ("assoc", "unit"):
        if n_random is not None:
            kwargs["n_random"] = n_random
    elif name == "concurrency":
        if n_random is not None:
            kwargs["n_random"] = n_random
        if size_bound is not None:
            kwargs["max_host_vertices"] = size_bound
    elif name == "jump":
        if n_random is not None:
            kwargs["n_random"] = n_random
        if size_bound is not None:
            kwargs["size_bound"] = size_bound
    else:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](**kwargs)
