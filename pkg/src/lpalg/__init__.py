"""Period-1 seeds of Laurent phenomenon algebras.

Exact Laurent polynomial arithmetic, construction and verification of
period-1 seeds, double quivers, the explicit families with their
closed-form seeds, and the recurrences the seeds generate.
"""
from .expr import format_poly, parse_poly
from .families import FamilySpec, build, classify_n2, classify_n3, expected_seed
from .lpseed import Seed, generate_seed, is_period1, mutate, verify_period1_by_mutation
from .polycore import LaurentPoly, x
from .quiver import BMatrix, is_period1_quiver, mutate_bmatrix
from .sequence import check_invariant, check_multilinearization, numeric_terms, symbolic_terms

__version__ = "0.1.0"

__all__ = [
    "BMatrix",
    "FamilySpec",
    "LaurentPoly",
    "Seed",
    "build",
    "check_invariant",
    "check_multilinearization",
    "classify_n2",
    "classify_n3",
    "expected_seed",
    "format_poly",
    "generate_seed",
    "is_period1",
    "is_period1_quiver",
    "mutate",
    "mutate_bmatrix",
    "numeric_terms",
    "parse_poly",
    "symbolic_terms",
    "verify_period1_by_mutation",
    "x",
]
