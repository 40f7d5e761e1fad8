"""Sesqui-pushout rewriting of finite directed multigraphs, with the rule
algebra over rule isomorphism classes and a stochastic-simulation layer."""

from .graph import (Cospan, EMPTY, Graph, GraphError, GraphMorphism, Span,
                    cycle, discrete, graph_from_json, graph_from_obj,
                    graph_to_json, graph_to_obj, path, single_edge,
                    validate_graph, validate_graph_data)
from .canon import (CanonicalForm, CanonicalizationLimit, canonical_form,
                    canonical_graph, graph_key, graphs_isomorphic)
from .homsearch import count_monos, enumerate_graph_classes, enumerate_monos, iter_subgraphs
from .category import (Verdict, final_pullback_complement, pullback, pushout,
                       pushout_complement, verify_square)
from .rules import (DirectDerivation, LinearRule, Match, Overlap, UNIT_RULE,
                    admissible_overlaps, apply_rule, compose_rules, library,
                    library_rule, matches, rewrite, rule_from_json, rule_from_obj,
                    rule_to_json, rule_to_obj)
from .algebra import (GraphStateVector, Observable, RuleAlgebraElement,
                      commutator, correlator, delta, dump, eigenvalue,
                      observable_apply, product, projection, represent, state, unit)
from .stochastic import (CTMCSpec, MasterResult, MomentRow, MomentSeries,
                         RateRule, SimConfig, Trajectory, build_truncated_generator,
                         estimate_moments, integrate_master_truncated, propensities,
                         reference_edge_mean, reference_edge_mean_grid,
                         reference_vertex_mgf, simulate_trajectory,
                         stationary_edge_mean, vertex_factorial_moment2_reference,
                         vertex_mean_reference)

__version__ = "0.1.0"
