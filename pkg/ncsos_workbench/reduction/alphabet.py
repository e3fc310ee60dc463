"""The alphabet of the reduction and its fixed elements.

Letters of H are ``J X Z s_S t_S s_T t_T s_W t_W``; the auxiliary letters are
``U1 U2 Xt Zt OP OQ``. U = U1 U2, P = (1 - OP)/2 and Q = (1 - OQ)/2.
"""

from fractions import Fraction

from ncsos_workbench.groups.cover import H_NAMES, involutionize_word
from ncsos_workbench.groups.gs import x_word, z_word
from ncsos_workbench.words.polynomial import StarPolynomial, word_poly
from ncsos_workbench.words.word import EMPTY, Generator, Word

AUX_NAMES = ("U1", "U2", "Xt", "Zt", "OP", "OQ")
ALPHABET = H_NAMES + AUX_NAMES

HALF = Fraction(1, 2)

U = Word.of("U1", "U2")
U_STAR = U.star()
S = Word.of("s_S", "t_S")
T = Word.of("s_T", "t_T")
W = Word.of("s_W", "t_W")
XT = Word.of("Xt")
ZT = Word.of("Zt")


def letters() -> tuple[Generator, ...]:
    """Every letter of the alphabet, unstarred."""
    return tuple(Generator(name) for name in ALPHABET)


def projection(name: str) -> StarPolynomial:
    """(1 - O)/2 for the order-two letter O."""
    return (StarPolynomial.constant(1) - StarPolynomial.letter(name)) * HALF


P = projection("OP")
Q = projection("OQ")


def u_power(n: int) -> Word:
    """U^n, with U^-n = (U*)^n."""
    return U.power(n)


def x_mi(m: int, i: int) -> Word:
    """X_{m,i} over the letters of H."""
    return involutionize_word(x_word(m, i))


def z_mi(m: int, i: int) -> Word:
    """Z_{m,i} over the letters of H."""
    return involutionize_word(z_word(m, i))


def designated() -> dict[str, Word]:
    """The H words standing for J, X, Z, S, T."""
    return {"J": Word.of("J"), "X": Word.of("X"), "Z": Word.of("Z"), "S": S, "T": T}


ONE = word_poly(EMPTY)
