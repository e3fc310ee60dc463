from fractions import Fraction

from ncsos_workbench.words.polynomial import (
    StarPolynomial,
    TensorPolynomial,
    involutive_reduce,
    omega,
    quotient_involutive,
    word_poly,
)
from ncsos_workbench.words.word import EMPTY, Generator, Word


def test_arithmetic_is_exact() -> None:
    x = StarPolynomial.letter("x")
    p = (1 + x) * (1 - x)
    assert p == 1 - x * x
    assert (x * Fraction(1, 3)).coefficient(Word.of("x")) == Fraction(1, 3)
    assert (x - x).is_zero()


def test_norms() -> None:
    p = word_poly(Word.of("a", "b"), -2) + word_poly(Word.of("c"), 3) + 5
    assert p.norm1() == 10
    assert p.norm11() == 2 * 2 + 3 * 1


def test_star_and_self_adjoint() -> None:
    a = StarPolynomial.letter("a")
    p = a.star() * a
    assert p.is_self_adjoint()
    assert not a.is_self_adjoint()
    assert p.star() == p


def test_omega_reverses_monomials() -> None:
    p = word_poly(Word.of("a", "b", "c"), 2)
    assert omega(p) == word_poly(Word.of("c", "b", "a"), 2)


def test_involutive_reduce() -> None:
    w = Word.of("a", Generator("b", True), "b", "a", "c")
    assert involutive_reduce(w) == Word.of("c")
    p = word_poly(Word.of("a", "a")) - 1
    assert quotient_involutive(p).is_zero()


def test_tensor_star_and_flip() -> None:
    a = StarPolynomial.letter("a")
    b = StarPolynomial.letter("b")
    t = TensorPolynomial.tensor(a, b)
    assert t.flip() == TensorPolynomial.tensor(b, a)
    assert t.star() == TensorPolynomial.tensor(a.star(), b.star())
    left = TensorPolynomial.left(a)
    assert left.terms == {(Word.of("a"), EMPTY): Fraction(1)}
