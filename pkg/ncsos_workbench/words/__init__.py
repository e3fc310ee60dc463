"""Words, *-monomials and exact *-polynomials."""

from .formats import format_polynomial, format_tensor, parse_polynomial, parse_tensor
from .polynomial import (
    StarPolynomial,
    TensorPolynomial,
    involutive_reduce,
    omega,
    quotient_involutive,
    word_poly,
)
from .word import EMPTY, Generator, Word, concat, parse_token, parse_word

__all__ = [
    "EMPTY",
    "Generator",
    "StarPolynomial",
    "TensorPolynomial",
    "Word",
    "concat",
    "format_polynomial",
    "format_tensor",
    "involutive_reduce",
    "omega",
    "parse_polynomial",
    "parse_tensor",
    "parse_token",
    "parse_word",
    "quotient_involutive",
    "word_poly",
]
