"""gmpkit: generalized matrix product (GMP) codes over finite fields."""

from gmpkit.bounds import (
    BoundReport,
    bound_thm61,
    bound_thm62,
    compute_Dt,
    compute_tau,
    is_nsc,
    mp_bounds,
    rank_condition,
)
from gmpkit.code import CapExceededError, LinearCode, TrivialCodeError
from gmpkit.field import GF, FieldElem, FieldError, field_from_spec
from gmpkit.gmp import GmpAnalysis, GmpSpec, gmp_bruteforce_code, gmp_dim_check, gmp_generator
from gmpkit.matrix import Matrix, ShapeError, block_diag, hstack, vstack
from gmpkit.qt import ConversionError, QtCode, gmp_to_qt, qt_expand, qt_invariance_check, qt_to_gmp, t_lambda
from gmpkit.registry import BkpEntry, BkpStore
from gmpkit.ring import Poly, RingElem, RingSpec, phi, phi_inv, poly_gcd

__all__ = [
    "BkpEntry", "BkpStore", "BoundReport", "CapExceededError", "ConversionError", "FieldElem",
    "FieldError", "GF", "GmpAnalysis", "GmpSpec", "LinearCode", "Matrix", "Poly", "QtCode",
    "RingElem", "RingSpec", "ShapeError", "TrivialCodeError", "block_diag", "bound_thm61",
    "bound_thm62", "compute_Dt", "compute_tau", "field_from_spec", "gmp_bruteforce_code",
    "gmp_dim_check", "gmp_generator", "gmp_to_qt", "hstack", "is_nsc", "mp_bounds", "phi",
    "phi_inv", "poly_gcd", "qt_expand", "qt_invariance_check", "qt_to_gmp", "rank_condition",
    "t_lambda", "vstack",
]
