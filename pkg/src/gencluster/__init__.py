"""Exact-arithmetic toolkit for generalized cluster seeds on matrix pairs.

The package builds initial seeds for generalized cluster structures on
pairs of square matrices and on periodic band matrices, mutates them with
multiplicity-aware quiver dynamics, and verifies the determinantal and
Poisson identities attached to those constructions: log-canonicity and
compatibility of the seed family, staircase-minor elimination ledgers,
explicit mutation fixtures, and an exhaustive charge-dynamics analysis.
All arithmetic is exact rational; randomized identity checks report their
failure bounds and symbolic certification takes over at small sizes.
"""

from .dag import (
    RegularFunction,
    assignment_from_matrices,
    entry_x,
    entry_y,
    evaluate,
    gradient,
)
from .linalg import ExactMatrix, det
from .polys import SparsePolynomial, exact_divide
from .identity import functions_equal
from .quiver import MultiplicityQuiver, Vertex
from .seeds import (
    ExchangeString,
    GeneralizedSeed,
    casimir_monomials,
    exchange_polynomial,
    mutate_seed,
    y_variable,
)
from .double_seed import build_quiver_bar, build_seed_bar
from .band import band_point, build_band_seed
from .poisson import bracket, compatibility_check, extract_weights, log_canonicity_matrix

__version__ = "0.1.0"

__all__ = [
    "RegularFunction",
    "assignment_from_matrices",
    "entry_x",
    "entry_y",
    "evaluate",
    "gradient",
    "ExactMatrix",
    "det",
    "SparsePolynomial",
    "exact_divide",
    "functions_equal",
    "MultiplicityQuiver",
    "Vertex",
    "ExchangeString",
    "GeneralizedSeed",
    "casimir_monomials",
    "exchange_polynomial",
    "mutate_seed",
    "y_variable",
    "build_quiver_bar",
    "build_seed_bar",
    "band_point",
    "build_band_seed",
    "bracket",
    "compatibility_check",
    "extract_weights",
    "log_canonicity_matrix",
]
