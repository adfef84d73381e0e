"""Exact maximum-weight perfect matching for integer-weighted general graphs.

Two dual-scaling solvers built on an Edmonds' blossom search engine, with a
brute-force oracle, LP-duality certificate verification, instance generators,
and a command-line frontend.
"""

from .drivers import Infeasible, RunReport, tau_hybrid, tau_sqrt
from .eligibility import Criterion, InvariantBreach
from .generators import nested_blossom_adversarial, random_gnm, random_regular_ish
from .graph import (
    Graph,
    Matching,
    ParseError,
    format_matching,
    load_dimacs,
    matching_weight,
    write_dimacs,
)
from .hybrid import HybridDriver, run_hybrid
from .liquidationist import LiquidationistDriver, run_liquidationist
from .verify import MatchingCertificate, brute_force_mwpm, check_invariants

__all__ = [
    "Criterion",
    "Graph",
    "HybridDriver",
    "Infeasible",
    "InvariantBreach",
    "LiquidationistDriver",
    "Matching",
    "MatchingCertificate",
    "ParseError",
    "RunReport",
    "brute_force_mwpm",
    "check_invariants",
    "format_matching",
    "load_dimacs",
    "matching_weight",
    "nested_blossom_adversarial",
    "random_gnm",
    "random_regular_ish",
    "run_hybrid",
    "run_liquidationist",
    "tau_hybrid",
    "tau_sqrt",
    "write_dimacs",
]

__version__ = "0.1.0"
