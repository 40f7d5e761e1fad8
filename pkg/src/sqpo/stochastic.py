"""Continuous-time Markov chain semantics for stochastic rewriting systems.

A model is a finite set of rules with non-negative base rates plus an
initial graph; the jump process applies a rule at a total rate of
(base rate) x (number of monic matches), mass-action style.  The module
provides the exact Gillespie sampler with per-trajectory counter-based
random streams, sample-moment estimation over a prescribed time grid,
closed-form reference curves for the random-graph model built from
vertex/edge creation and deletion, and a truncated master-equation
integrator used as a small-scale cross-validation oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .algebra import GraphStateVector, Observable, eigenvalue
from .canon import canonical_graph, graph_key
from .graph import Graph
from .homsearch import count_monos, iter_mono_maps
from .rules import LinearRule, rewrite


@dataclass(frozen=True)
class RateRule:
    name: str
    rule: LinearRule
    rate: float

    def __post_init__(self):
        if self.rate < 0:
            raise ValueError(f"rule {self.name!r}: negative base rate")


@dataclass(frozen=True)
class CTMCSpec:
    rules: tuple[RateRule, ...]
    initial: Graph

    def __post_init__(self):
        if not self.rules:
            raise ValueError("a CTMC spec needs at least one rule")
        names = [r.name for r in self.rules]
        if len(set(names)) != len(names):
            raise ValueError("rule names must be unique")


DEFAULT_STATE_CAP = 10_000


@dataclass(frozen=True)
class SimConfig:
    seed: int
    t_max: float
    n_traj: int
    record_grid: tuple[float, ...]
    state_cap: int = DEFAULT_STATE_CAP

    def __post_init__(self):
        if self.t_max <= 0:
            raise ValueError("t_max must be positive")
        if self.n_traj < 1:
            raise ValueError("n_traj must be at least 1")
        grid = tuple(sorted(self.record_grid))
        if grid != tuple(self.record_grid):
            raise ValueError("record_grid must be sorted")
        if grid and (grid[0] < 0 or grid[-1] > self.t_max):
            raise ValueError("record_grid must lie within [0, t_max]")


def propensities(spec: CTMCSpec, x: Graph) -> list[tuple[int, float]]:
    """Per-rule jump rates in state x: base rate times match count."""
    return [(j, r.rate * count_monos(r.rule.input, x))
            for j, r in enumerate(spec.rules)]


@dataclass
class Trajectory:
    """One sampled trajectory: jump records plus grid-time observable samples.

    samples[name] is aligned with the leading entries of grid; it is
    shorter than the grid only when the state-size guard tripped.
    """
    index: int
    times: list[float]
    rule_names: list[str | None]
    states: list[Graph]
    grid: tuple[float, ...]
    samples: dict[str, list[float]]
    flagged_at: float | None = None


def _stream(seed: int, index: int) -> np.random.Generator:
    # counter-based Philox keyed by (seed, trajectory index): trajectories
    # are independent, reproducible, and order-insensitive
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, index & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def simulate_trajectory(spec: CTMCSpec, cfg: SimConfig, index: int,
                        observables: Sequence[tuple[str, Observable]] = ()) -> Trajectory:
    """Exact simulation of one trajectory (Gillespie direct method).

    Waiting times are exponential in the total exit rate; the rule is
    chosen proportionally to its propensity and the match uniformly within
    the rule.  Deterministic given (cfg.seed, index).
    """
    rng = _stream(cfg.seed, index)
    state = spec.initial
    t = 0.0
    traj = Trajectory(index, [0.0], [None], [state], tuple(cfg.record_grid),
                      {name: [] for name, _ in observables})
    gi = 0
    grid = traj.grid
    while True:
        rates = [r.rate * count_monos(r.rule.input, state) for r in spec.rules]
        total = math.fsum(rates)
        t_next = t + rng.exponential(1.0 / total) if total > 0.0 else math.inf
        while gi < len(grid) and grid[gi] < t_next and grid[gi] <= cfg.t_max:
            for name, obs in observables:
                traj.samples[name].append(float(eigenvalue(obs, state)))
            gi += 1
        if t_next > cfg.t_max:
            return traj
        u = rng.random() * total
        acc = 0.0
        j = len(rates) - 1
        for jj, rate in enumerate(rates):
            acc += rate
            if u < acc:
                j = jj
                break
        rule = spec.rules[j].rule
        match_maps = list(iter_mono_maps(rule.input, state))
        vmap, emap = match_maps[int(rng.integers(len(match_maps)))]
        state = rewrite(rule, state, vmap, emap)
        t = t_next
        traj.times.append(t)
        traj.rule_names.append(spec.rules[j].name)
        traj.states.append(state)
        if state.size > cfg.state_cap:
            traj.flagged_at = t
            return traj


@dataclass
class MomentRow:
    t: float
    observable: str
    mean: float
    variance: float
    stderr: float
    n: int


@dataclass
class MomentSeries:
    """Sample statistics of observable eigenvalues across trajectories."""
    rows: list[MomentRow]
    n_flagged: int = 0

    def row(self, t: float, observable: str) -> MomentRow:
        for r in self.rows:
            if r.t == t and r.observable == observable:
                return r
        raise KeyError((t, observable))

    def to_csv(self) -> str:
        lines = ["t,observable,mean,variance,stderr,n"]
        for r in self.rows:
            lines.append(f"{r.t!r},{r.observable},{r.mean!r},{r.variance!r},{r.stderr!r},{r.n}")
        return "\n".join(lines) + "\n"


def _sample_chunk(args):
    spec, cfg, observables, indices = args
    out = []
    for index in indices:
        traj = simulate_trajectory(spec, cfg, index, observables)
        out.append((index, traj.samples, traj.flagged_at))
    return out


def collect_samples(spec: CTMCSpec, cfg: SimConfig,
                    observables: Sequence[tuple[str, Observable]],
                    n_workers: int = 1):
    """Raw per-grid-time samples for each observable; returns
    (samples, n_flagged) with samples[name][gi] a list of values."""
    indices = list(range(cfg.n_traj))
    if n_workers > 1:
        chunks = [indices[w::n_workers] for w in range(n_workers)]
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = [r for chunk in pool.map(
                _sample_chunk, [(spec, cfg, tuple(observables), c) for c in chunks])
                for r in chunk]
        results.sort(key=lambda r: r[0])
    else:
        results = _sample_chunk((spec, cfg, tuple(observables), indices))
    grid = list(cfg.record_grid)
    samples = {name: [[] for _ in grid] for name, _ in observables}
    n_flagged = 0
    for _, traj_samples, flagged_at in results:
        if flagged_at is not None:
            n_flagged += 1
        for name, values in traj_samples.items():
            for gi, value in enumerate(values):
                samples[name][gi].append(value)
    return samples, n_flagged


def estimate_moments(spec: CTMCSpec, cfg: SimConfig,
                     observables: Sequence[tuple[str, Observable]],
                     n_workers: int = 1) -> MomentSeries:
    """Per-grid-time sample mean/variance/stderr over independent trajectories."""
    if cfg.n_traj < 2:
        raise ValueError("moment estimation needs n_traj >= 2")
    samples, n_flagged = collect_samples(spec, cfg, observables, n_workers)
    rows = []
    for gi, t in enumerate(cfg.record_grid):
        for name, _ in observables:
            values = samples[name][gi]
            n = len(values)
            if n == 0:
                rows.append(MomentRow(t, name, math.nan, math.nan, math.nan, 0))
                continue
            mean = math.fsum(values) / n
            if n >= 2:
                var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
                stderr = math.sqrt(var / n)
            else:
                var = math.nan
                stderr = math.nan
            rows.append(MomentRow(t, name, mean, var, stderr, n))
    return MomentSeries(rows, n_flagged)


# --- closed-form reference curves ---------------------------------------

def reference_vertex_mgf(t: float, lam: float, nu_plus: float, nu_minus: float,
                         n_vertices: int = 0) -> float:
    """Moment generating function of the vertex count at time t for the
    vertex/edge birth-death model, starting from n_vertices vertices.

    Requires nu_minus > 0; the degenerate pure-birth form is not part of
    the model's closed form and is rejected.
    """
    if nu_minus <= 0:
        raise ValueError("reference_vertex_mgf requires nu_minus > 0")
    if t < 0:
        raise ValueError("t must be non-negative")
    u = math.exp(lam) - 1.0
    decay = math.exp(-nu_minus * t)
    return math.exp((nu_plus / nu_minus) * u * (1.0 - decay)) * (1.0 + u * decay) ** n_vertices


def vertex_mean_reference(t: float, nu_plus: float, nu_minus: float,
                          n_vertices: int = 0) -> float:
    # d/dlam at lam=0 of the MGF: A + N*B with A = (nu+/nu-)(1-e^{-nu- t}),
    # B = e^{-nu- t}
    if nu_minus <= 0:
        raise ValueError("vertex_mean_reference requires nu_minus > 0")
    decay = math.exp(-nu_minus * t)
    return (nu_plus / nu_minus) * (1.0 - decay) + n_vertices * decay


def vertex_factorial_moment2_reference(t: float, nu_plus: float, nu_minus: float,
                                       n_vertices: int = 0) -> float:
    # <V(V-1)> = (d/dlam)(d/dlam - 1) MGF at lam=0 = (A + N*B)^2 - N*B^2
    if nu_minus <= 0:
        raise ValueError("vertex_factorial_moment2_reference requires nu_minus > 0")
    decay = math.exp(-nu_minus * t)
    a = (nu_plus / nu_minus) * (1.0 - decay)
    return (a + n_vertices * decay) ** 2 - n_vertices * decay * decay


_moment_formulas_checked = False


def _check_moment_formulas():
    """Central finite differences of the MGF against the analytic lam-derivatives."""
    global _moment_formulas_checked
    if _moment_formulas_checked:
        return
    t, nup, num, n0 = 0.7, 2.0, 1.3, 2
    h = 1e-4

    def mgf(lam):
        return reference_vertex_mgf(t, lam, nup, num, n0)

    d1 = (-mgf(2 * h) + 8 * mgf(h) - 8 * mgf(-h) + mgf(-2 * h)) / (12 * h)
    d2 = (-mgf(2 * h) + 16 * mgf(h) - 30 * mgf(0.0) + 16 * mgf(-h) - mgf(-2 * h)) / (12 * h * h)
    mean = vertex_mean_reference(t, nup, num, n0)
    fact2 = vertex_factorial_moment2_reference(t, nup, num, n0)
    if abs(d1 - mean) > 1e-5 * max(1.0, abs(mean)) or \
            abs((d2 - d1) - fact2) > 1e-5 * max(1.0, abs(fact2)):
        raise AssertionError("moment formulas disagree with finite differences of the MGF")
    _moment_formulas_checked = True


def reference_edge_mean_grid(times: Sequence[float], nu_plus: float, nu_minus: float,
                             eps_plus: float, eps_minus: float,
                             n_vertices: int = 0, n_edges: int = 0) -> list[float]:
    """Mean edge count at the given times, by integrating the linear ODE
    driven by the closed-form second factorial vertex moment."""
    _check_moment_formulas()
    if min(nu_plus, eps_plus, eps_minus) < 0:
        raise ValueError("rates must be non-negative")
    if nu_minus <= 0:
        raise ValueError("reference_edge_mean requires nu_minus > 0")
    times = [float(t) for t in times]
    if any(t < 0 for t in times) or sorted(times) != times:
        raise ValueError("times must be sorted and non-negative")
    if not times:
        return []
    drain = eps_minus + 2.0 * nu_minus

    def rhs(s, y):
        return [eps_plus * vertex_factorial_moment2_reference(s, nu_plus, nu_minus, n_vertices)
                - drain * y[0]]

    t_end = times[-1]
    if t_end == 0.0:
        return [float(n_edges) for _ in times]
    sol = solve_ivp(rhs, (0.0, t_end), [float(n_edges)], t_eval=times,
                    rtol=1e-8, atol=1e-12, method="DOP853")
    if not sol.success:
        raise RuntimeError(f"edge-mean ODE integration failed: {sol.message}")
    return [float(v) for v in sol.y[0]]


def reference_edge_mean(t: float, nu_plus: float, nu_minus: float,
                        eps_plus: float, eps_minus: float,
                        n_vertices: int = 0, n_edges: int = 0) -> float:
    return reference_edge_mean_grid([t], nu_plus, nu_minus, eps_plus, eps_minus,
                                    n_vertices, n_edges)[0]


def stationary_edge_mean(nu_plus: float, nu_minus: float,
                         eps_plus: float, eps_minus: float) -> float:
    """Long-time limit of the mean edge count."""
    if nu_minus <= 0 or 2.0 * nu_minus + eps_minus <= 0:
        raise ValueError("stationary_edge_mean requires nu_minus > 0 and 2*nu_minus + eps_minus > 0")
    return nu_plus ** 2 * eps_plus / (nu_minus ** 2 * (2.0 * nu_minus + eps_minus))


# --- truncated master equation ------------------------------------------

def build_truncated_generator(spec: CTMCSpec, cap: int):
    """Reachable states (up to cap, BFS order, canonical representatives)
    and the (cap+1)-state generator with an absorbing leak sink.

    Convention: q[s, t] is the rate s -> t; the last row/column is the
    sink collecting transitions into states beyond the cap; diagonal
    entries make each row sum to zero.
    """
    start = canonical_graph(spec.initial)
    states = [start]
    index = {graph_key(start): 0}
    transitions: list[dict[int, float]] = [{}]
    leak = [0.0]
    head = 0
    while head < len(states):
        s = states[head]
        for rr in spec.rules:
            if rr.rate == 0.0:
                continue
            for vmap, emap in iter_mono_maps(rr.rule.input, s):
                y = rewrite(rr.rule, s, vmap, emap)
                ky = graph_key(y)
                tgt = index.get(ky)
                if tgt is None:
                    if len(states) < cap:
                        tgt = len(states)
                        index[ky] = tgt
                        states.append(canonical_graph(y))
                        transitions.append({})
                        leak.append(0.0)
                    else:
                        leak[head] += rr.rate
                        continue
                transitions[head][tgt] = transitions[head].get(tgt, 0.0) + rr.rate
        head += 1
    n = len(states)
    q = np.zeros((n + 1, n + 1))
    for s, row in enumerate(transitions):
        for tgt, rate in row.items():
            q[s, tgt] += rate
        q[s, n] = leak[s]
        q[s, s] = -(sum(row.values()) + leak[s])
    return states, q


@dataclass
class MasterResult:
    """Truncated master-equation solution at one time point."""
    states: list[Graph]
    distribution: GraphStateVector
    leak: float
    reliable: bool
    q_matrix: np.ndarray = field(repr=False)


def integrate_master_truncated(spec: CTMCSpec, t: float, cap: int,
                               leak_threshold: float = 1e-6) -> MasterResult:
    """Solve the master equation on the reachable states within the cap.

    Probability escaping the cap accumulates in an explicit leak sink, so
    in-cap mass plus leak is conserved; the result is flagged unreliable
    when the leak exceeds the threshold.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    states, q = build_truncated_generator(spec, cap)
    n = len(states)
    p0 = np.zeros(n + 1)
    p0[0] = 1.0
    pt = expm(q.T * t) @ p0
    dist = GraphStateVector([(g, float(pt[i])) for i, g in enumerate(states) if pt[i] != 0.0])
    leak_mass = float(pt[n])
    return MasterResult(states, dist, leak_mass, leak_mass <= leak_threshold, q)
