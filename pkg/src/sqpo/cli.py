"""Batch command-line front-end.

Subcommands: compose | product | represent | simulate | verify | reference.
All randomness flows from explicit seeds, every run with the same inputs
produces byte-identical outputs, and numeric output uses round-trip-safe
decimal formatting.  SQPO_WORKERS (default 1) controls parallel
trajectory sampling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import (GraphStateVector, Observable, RuleAlgebraElement, delta,
                      dump, product, represent, state)
from .canon import graph_key
from .graph import Graph, GraphError, graph_from_obj, graph_to_json
from .rules import (LinearRule, admissible_overlaps, compose_rules, library_rule,
                    rule_from_obj, rule_to_json)
from .stochastic import (CTMCSpec, RateRule, SimConfig, estimate_moments,
                         reference_edge_mean_grid, reference_vertex_mgf,
                         simulate_trajectory, stationary_edge_mean)
from .suites import run_suite
from . import graph as graphmod


class CliError(Exception):
    pass


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CliError(f"{path}: file not found")
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}")


def _load_rule(spec: str) -> LinearRule:
    """A rule file path, or lib:NAME for a shipped library rule."""
    if spec.startswith("lib:"):
        try:
            return library_rule(spec[4:])
        except GraphError as exc:
            raise CliError(str(exc))
    obj = _load_json(spec)
    try:
        return rule_from_obj(obj)
    except GraphError as exc:
        raise CliError(f"{spec}: {exc}")


def _load_element(spec: str) -> RuleAlgebraElement:
    """An algebra element file ({"terms": [{"rule":…, "coeff":…}]}), a bare
    rule file, or lib:NAME; bare rules load as their basis element."""
    if spec.startswith("lib:"):
        return delta(_load_rule(spec))
    obj = _load_json(spec)
    try:
        if isinstance(obj, dict) and "terms" in obj:
            return RuleAlgebraElement(
                [(rule_from_obj(term["rule"]), Fraction(str(term["coeff"])))
                 for term in obj["terms"]])
        return delta(rule_from_obj(obj))
    except (GraphError, KeyError, ValueError) as exc:
        raise CliError(f"{spec}: {exc}")


def _load_state(spec: str) -> GraphStateVector:
    obj = _load_json(spec)
    try:
        if isinstance(obj, dict) and "terms" in obj:
            return GraphStateVector(
                [(graph_from_obj(term["graph"]), Fraction(str(term["coeff"])))
                 for term in obj["terms"]])
        return state(graph_from_obj(obj))
    except (GraphError, KeyError, ValueError) as exc:
        raise CliError(f"{spec}: {exc}")


def _load_model(path: str) -> CTMCSpec:
    obj = _load_json(path)
    try:
        rules = []
        for entry in obj["rules"]:
            name = entry["name"]
            rate = float(entry["rate"])
            if "lib" in entry:
                rule = library_rule(entry["lib"])
            else:
                rule = rule_from_obj(entry["rule"])
            rules.append(RateRule(name, rule, rate))
        initial = graph_from_obj(obj["initial"])
        return CTMCSpec(tuple(rules), initial)
    except (GraphError, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"{path}: malformed model: {exc}")


def _parse_observables(text: str) -> list[tuple[str, Observable]]:
    """Comma list of builtin names (vertices, edges) and @motif.json files."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if item == "vertices":
            out.append(("vertices", Observable(graphmod.discrete(1))))
        elif item == "edges":
            out.append(("edges", Observable(graphmod.single_edge())))
        elif item.startswith("@"):
            motif = graph_from_obj(_load_json(item[1:]))
            out.append((item[1:], Observable(motif)))
        else:
            raise CliError(f"unknown observable {item!r} (use vertices, edges, or @motif.json)")
    if not out:
        raise CliError("no observables given")
    return out


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_compose(args) -> int:
    p2 = _load_rule(args.p2)
    p1 = _load_rule(args.p1)
    overlaps = admissible_overlaps(p2, p1)
    lines = [f"admissible overlaps: {len(overlaps)}"]
    class_counts: dict[str, int] = {}
    class_rule: dict[str, LinearRule] = {}
    for idx, ov in enumerate(overlaps):
        q = compose_rules(p2, ov, p1)
        key = q.key
        class_counts[key] = class_counts.get(key, 0) + 1
        class_rule.setdefault(key, q.canonical())
        lines.append(f"overlap {idx}: apex={graph_key(ov.apex)} composite={key}")
    lines.append(f"composite classes: {len(class_counts)}")
    for key in sorted(class_counts):
        lines.append(f"x{class_counts[key]}\t{key}\t{rule_to_json(class_rule[key])}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_product(args) -> int:
    result = product(_load_element(args.a), _load_element(args.b))
    text = dump(result)
    _emit(text + "\n" if text else "0\n", args.output)
    return 0


def cmd_represent(args) -> int:
    result = represent(_load_element(args.element), _load_state(args.state))
    if result.is_zero():
        _emit("0\n", args.output)
        return 0
    lines = [f"{graph_key(g)}\t{coeff}\t{graph_to_json(g)}" for g, coeff in result.items()]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_simulate(args) -> int:
    spec = _load_model(args.model)
    grid = tuple(float(t) for t in args.grid.split(","))
    cfg = SimConfig(seed=args.seed, t_max=args.t_max, n_traj=args.n_traj,
                    record_grid=grid, state_cap=args.state_cap)
    observables = _parse_observables(args.observables)
    n_workers = int(os.environ.get("SQPO_WORKERS", "1"))
    series = estimate_moments(spec, cfg, observables, n_workers=n_workers)
    _emit(series.to_csv(), args.output)
    if args.dump_trajectories:
        with open(args.dump_trajectories, "w") as fh:
            for index in range(cfg.n_traj):
                traj = simulate_trajectory(spec, cfg, index, ())
                for t, name, g in zip(traj.times, traj.rule_names, traj.states):
                    record = {"trajectory": index, "time": t, "rule": name,
                              "state": json.loads(graph_to_json(g)),
                              "flagged": traj.flagged_at is not None and t >= traj.flagged_at}
                    fh.write(json.dumps(record, separators=(",", ":")) + "\n")
    summary = [f"# trajectories: {cfg.n_traj}  flagged: {series.n_flagged}"]
    for row in series.rows:
        summary.append(f"# t={row.t:g} {row.observable}: mean={row.mean:.6g} "
                       f"var={row.variance:.6g} stderr={row.stderr:.6g} n={row.n}")
    sys.stderr.write("\n".join(summary) + "\n")
    return 0


def cmd_verify(args) -> int:
    names = ["fpc", "assoc", "concurrency", "jump", "unit"] if args.suite == "all" \
        else [args.suite]
    all_passed = True
    for name in names:
        report = run_suite(name, size_bound=args.size_bound,
                           n_random=args.n_random, seed=args.seed)
        for line in report.lines(verbose=args.verbose):
            print(line)
        all_passed = all_passed and report.passed
    return 0 if all_passed else 1


def cmd_reference(args) -> int:
    grid = [float(t) for t in args.grid.split(",")] if args.grid else []
    try:
        if args.formula == "mv":
            if not grid:
                raise CliError("--grid is required for mv")
            lines = ["t,lam,mv"]
            for t in grid:
                value = reference_vertex_mgf(t, args.lam, args.nu_plus, args.nu_minus,
                                             args.n_vertices)
                lines.append(f"{t!r},{args.lam!r},{value!r}")
        elif args.formula == "edge-mean":
            if not grid:
                raise CliError("--grid is required for edge-mean")
            values = reference_edge_mean_grid(grid, args.nu_plus, args.nu_minus,
                                              args.eps_plus, args.eps_minus,
                                              args.n_vertices, args.n_edges)
            lines = ["t,edge_mean"]
            for t, value in zip(grid, values):
                lines.append(f"{t!r},{value!r}")
        elif args.formula == "edge-limit":
            value = stationary_edge_mean(args.nu_plus, args.nu_minus,
                                         args.eps_plus, args.eps_minus)
            lines = ["edge_limit", repr(value)]
        else:
            raise CliError(f"unknown formula {args.formula!r}")
    except ValueError as exc:
        raise CliError(str(exc))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqpo",
        description="Sesqui-pushout rewriting: rule composition, rule-algebra "
                    "products, representations, stochastic simulation, and "
                    "verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="list admissible overlaps and composites of two rules")
    p.add_argument("p2", help="outer rule: JSON file or lib:NAME")
    p.add_argument("p1", help="inner rule: JSON file or lib:NAME")
    p.add_argument("--output", help="write to file instead of stdout")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("product", help="rule algebra product a*b")
    p.add_argument("a", help="algebra element / rule JSON file or lib:NAME")
    p.add_argument("b", help="algebra element / rule JSON file or lib:NAME")
    p.add_argument("--output")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("represent", help="apply a rule algebra element to a graph state")
    p.add_argument("element", help="algebra element / rule JSON file or lib:NAME")
    p.add_argument("state", help="graph state JSON file (bare graph allowed)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser(
        "simulate", help="sample trajectories and write moment CSV",
        epilog="SQPO_WORKERS (default 1) runs trajectories in parallel processes; "
               "outputs are identical for any worker count.")
    p.add_argument("model", help="model JSON: rules with rates plus initial graph")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--n-traj", type=int, required=True)
    p.add_argument("--grid", required=True, help="comma-separated sample times")
    p.add_argument("--observables", default="vertices,edges",
                   help="comma list: vertices, edges, @motif.json (default vertices,edges)")
    p.add_argument("--state-cap", type=int, default=10_000,
                   help="vertices+edges runaway guard per state (default 10000)")
    p.add_argument("--dump-trajectories", help="also write JSON-lines jump records here")
    p.add_argument("--output", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=["fpc", "assoc", "concurrency", "jump", "unit", "all"],
                   default="all")
    p.add_argument("--size-bound", type=int, default=None,
                   help="host size bound (fpc sweep / hosts; suite-specific default)")
    p.add_argument("--n-random", type=int, default=None, help="random cases per suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--verbose", action="store_true", help="print passing checks too")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reference", help="closed-form reference curves")
    p.add_argument("--formula", choices=["mv", "edge-mean", "edge-limit"], required=True)
    p.add_argument("--nu-plus", type=float, default=1.0)
    p.add_argument("--nu-minus", type=float, default=1.0)
    p.add_argument("--eps-plus", type=float, default=0.0)
    p.add_argument("--eps-minus", type=float, default=0.0)
    p.add_argument("--lam", type=float, default=0.0, help="mgf argument (mv only)")
    p.add_argument("--n-vertices", type=int, default=0, help="initial vertex count")
    p.add_argument("--n-edges", type=int, default=0, help="initial edge count")
    p.add_argument("--grid", help="comma-separated times")
    p.add_argument("--output")
    p.set_defaults(func=cmd_reference)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
