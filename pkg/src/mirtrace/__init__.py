"""Exact computations for the mirabolic trace formula: canonical forms over Q,
the hook-length zeta-factor predictor, and the local p-adic theory
(Schwartz-Bruhat functions, Fourier transform, Tate and Eisenstein integrals)."""
from .errors import (DegreeBoundError, IndeterminateValuationError, InternalConsistencyError,
                     MirtraceError, MismatchedPrimeError, PoleError, PrecisionError,
                     UnboundedSupportError)
from .exactnum import (CyclotomicNumber, IdentityCheck, LaurentPoly, Rational, ZetaExpression,
                       zeta_expr_equal, zeta_expr_eval)
from .padic import PAdicScalar, PAdicVector, additive_character, norm, valuation
from .schwartz import (AffineMap, ModulatedBall, SchwartzFunction, affine_pullback_product_integral,
                       evaluate, fourier_transform, integrate)
from .tate import LocalZetaFactor, local_tate_integral, verify_local_functional_equation
from .partitions import (ClassComponent, ClassDatum, Partition, conjugate, h_prop4, hook_arm_leg,
                         partitions_of, predict_zeta_multiset, verify_conjugation_symmetry)
from .canonical import (RationalMatrix, RationalPoly, char_poly, class_datum, classify, companion,
                        discriminant, factor_over_rationals, frobenius_normal_form,
                        invariant_factors, is_regular_pair)
from .mirabolic import (GroupElement, gl1_local_trace, local_eisenstein_integral, local_kernel,
                        verify_gl1_trace_swap, verify_kernel_swap)

__version__ = "0.1.0"

__all__ = [
    "DegreeBoundError", "IndeterminateValuationError", "InternalConsistencyError",
    "MirtraceError", "MismatchedPrimeError", "PoleError", "PrecisionError",
    "UnboundedSupportError", "CyclotomicNumber", "IdentityCheck", "LaurentPoly", "Rational",
    "ZetaExpression", "zeta_expr_equal", "zeta_expr_eval", "PAdicScalar", "PAdicVector",
    "additive_character", "norm", "valuation", "AffineMap", "ModulatedBall", "SchwartzFunction",
    "affine_pullback_product_integral", "evaluate", "fourier_transform", "integrate",
    "LocalZetaFactor", "local_tate_integral", "verify_local_functional_equation",
    "ClassComponent", "ClassDatum", "Partition", "conjugate", "h_prop4", "hook_arm_leg",
    "partitions_of", "predict_zeta_multiset", "verify_conjugation_symmetry", "RationalMatrix",
    "RationalPoly", "char_poly", "class_datum", "classify", "companion", "discriminant",
    "factor_over_rationals", "frobenius_normal_form", "invariant_factors", "is_regular_pair",
    "GroupElement", "gl1_local_trace", "local_eisenstein_integral", "local_kernel",
    "verify_gl1_trace_swap", "verify_kernel_swap",
]
