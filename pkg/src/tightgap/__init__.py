"""Certified interval analysis of threshold rounding for weighted 2-SAT
and its implication/negation subclasses.

The package computes verified enclosures of the optimal rounding
constants, re-checks the supporting inequalities with a divide-and-conquer
interval engine, builds the matching hard clause distributions with
auditable optimality certificates, and cross-validates every analytic
probability against a Monte-Carlo simulator.
"""

__version__ = "1.0.0"

from .interval import Box, Interval, as_interval
from .config import Configuration, PredicateType, parse_config_literal
from .verifier import CheckReport, CheckStatus, Criterion, check, run_lemma
from .constants import (ConstantReport, minimize_simple_line,
                        solve_alpha_star, solve_beta_llz, solve_gamma_star)
from .hardness import (Certificate, ThresholdPoint, WeightedDistribution,
                       build_theta1, build_theta2, prob_theta,
                       theta1_optimal_certificate,
                       theta2_boundary_certificate,
                       theta2_global_certificate)
from .simulator import (TinyInstance, VectorTriple, brute_force_opt, embed,
                        mc_distribution, mc_round, parse_tiny_instance)

__all__ = [
    "Box", "Certificate", "CheckReport", "CheckStatus", "ConstantReport",
    "Configuration", "Criterion", "Interval", "PredicateType",
    "ThresholdPoint", "TinyInstance", "VectorTriple",
    "WeightedDistribution", "as_interval", "brute_force_opt",
    "build_theta1", "build_theta2", "check", "embed", "mc_distribution",
    "mc_round", "minimize_simple_line", "parse_config_literal",
    "parse_tiny_instance", "prob_theta", "run_lemma", "solve_alpha_star",
    "solve_beta_llz", "solve_gamma_star", "theta1_optimal_certificate",
    "theta2_boundary_certificate", "theta2_global_certificate",
]
