"""Exact computations around the center of a 2-block with defect group of order 16."""

from __future__ import annotations

from .center import center_basis, match_presentation, q_from_gendec, reduce_mod_p
from .exact_linalg import IntMatrix, RatMatrix, integer_kernel_basis, smith_normal_form
from .fdalgebra import FinDimAlgebra, Subspace
from .gendec import BlockDatum, SubsectionDatum, assemble, check_star_congruences, contribution
from .plesken import enumerate_rows, enumerate_solutions, gram_automorphisms
from .resolution import fibonacci_certificate, hypothesis_check, minimal_resolution_dims
from .verify import verify_paper

__version__ = "0.1.0"

__all__ = [
    "IntMatrix",
    "RatMatrix",
    "smith_normal_form",
    "integer_kernel_basis",
    "enumerate_rows",
    "enumerate_solutions",
    "gram_automorphisms",
    "BlockDatum",
    "SubsectionDatum",
    "contribution",
    "check_star_congruences",
    "assemble",
    "q_from_gendec",
    "center_basis",
    "reduce_mod_p",
    "match_presentation",
    "FinDimAlgebra",
    "Subspace",
    "minimal_resolution_dims",
    "fibonacci_certificate",
    "hypothesis_check",
    "verify_paper",
]
