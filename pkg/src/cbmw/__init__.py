"""Exact parameter computations for cyclotomic BMW algebras."""

from .exact import (
    LaurentPolynomial,
    RationalFunction,
    SingularPointError,
    Variable,
    evaluate,
    parse_poly,
    q,
    ratfun_normalize,
    rho,
    substitute,
    u,
)
from .series import ASCENDING, DESCENDING, Series, expand_geometric_factor, series_arith, series_invert
from .symfun import complete_homogeneous, elementary_symmetric, mu_table, signed_coeffs

__version__ = "0.1.0"

__all__ = [
    "ASCENDING",
    "DESCENDING",
    "LaurentPolynomial",
    "RationalFunction",
    "Series",
    "SingularPointError",
    "Variable",
    "complete_homogeneous",
    "elementary_symmetric",
    "evaluate",
    "expand_geometric_factor",
    "mu_table",
    "parse_poly",
    "q",
    "ratfun_normalize",
    "rho",
    "series_arith",
    "series_invert",
    "signed_coeffs",
    "substitute",
    "u",
]
