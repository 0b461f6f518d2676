"""Exact linear algebra over Q: canonical forms and conjugacy-class data."""
from .classes import Classification, class_datum, classify
from .factor import DEFAULT_DEGREE_BOUND, factor_over_rationals, squarefree_decomposition
from .linalg import (RationalMatrix, char_poly, char_poly_faddeev, companion, is_regular_pair,
                     krylov_matrix, poly_at_matrix)
from .poly import RationalPoly, discriminant, poly_gcd, resultant
from .smith import FrobeniusForm, frobenius_normal_form, invariant_factors, smith_form

__all__ = [
    "Classification", "DEFAULT_DEGREE_BOUND", "FrobeniusForm", "RationalMatrix", "RationalPoly",
    "char_poly", "char_poly_faddeev", "class_datum", "classify", "companion", "discriminant",
    "factor_over_rationals", "frobenius_normal_form", "invariant_factors", "is_regular_pair",
    "krylov_matrix", "poly_at_matrix", "poly_gcd", "resultant", "smith_form",
    "squarefree_decomposition",
]
