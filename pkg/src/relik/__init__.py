"""Relative likelihood over partially ordered preferential structures."""

from .lifting import LiftVariant, dominates, geq_star, min_worlds, succ_prime, succ_star
from .logic import check_klm, desugar, evaluate, evaluate_cond_min
from .model import PreferentialStructure, extension, load_structure, validate_structure
from .syntax import parse_formula, parse_prop, print_formula

__all__ = [
    "LiftVariant",
    "PreferentialStructure",
    "check_klm",
    "desugar",
    "dominates",
    "evaluate",
    "evaluate_cond_min",
    "extension",
    "geq_star",
    "load_structure",
    "min_worlds",
    "parse_formula",
    "parse_prop",
    "print_formula",
    "succ_prime",
    "succ_star",
    "validate_structure",
]
