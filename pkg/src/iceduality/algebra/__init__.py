"""Exact coefficient ring and sparse Laurent polynomials."""
from .laurent import (
    InexactDivision,
    LaurentPoly,
    RationalExpr,
    exact_div,
    longest_element,
    simple_reflection,
    spectral_power,
    substitute,
    weyl_act,
)
from .scalar import Scalar, rep, residue, scalar_normalize

__all__ = [
    "InexactDivision",
    "LaurentPoly",
    "RationalExpr",
    "Scalar",
    "exact_div",
    "longest_element",
    "rep",
    "residue",
    "scalar_normalize",
    "simple_reflection",
    "spectral_power",
    "substitute",
    "weyl_act",
]
