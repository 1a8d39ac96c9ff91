"""Exact polynomials with nonnegative coefficients that equal 1 on the hyperplane sum(x) = 1."""

from planepoly.classes import in_H, in_J, in_P, membership, quotient_q
from planepoly.polynomial import Polynomial, measure, s_form
from planepoly.serialize import parse_text, to_text

__version__ = "0.1.0"

__all__ = [
    "Polynomial",
    "in_H",
    "in_J",
    "in_P",
    "measure",
    "membership",
    "parse_text",
    "quotient_q",
    "s_form",
    "to_text",
    "__version__",
]
