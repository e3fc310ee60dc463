from ncsos_workbench.certificates.quotients import (
    CommutativeQuotient,
    FreeStarQuotient,
    InvolutiveQuotient,
    cyclic_chain,
    motzkin,
    reduce_polynomial,
)
from ncsos_workbench.words.polynomial import StarPolynomial
from ncsos_workbench.words.word import Word
from ncsos_workbench.words.word import parse_word as W


def test_free_star_basis() -> None:
    q = FreeStarQuotient(["x"])
    assert q.basis(1) == [Word(), W("x"), W("x~")]
    assert len(q.basis(2)) == 7
    assert q.adjoint(W("x y~")) == W("y x~")


def test_involutive_cancellation() -> None:
    q = InvolutiveQuotient(["x", "y"])
    assert q.normal_form(W("x x y")) == W("y")
    assert q.normal_form(W("x y x")) == W("x y x")
    assert q.adjoint(W("x y")) == W("y x")
    assert len(q.basis(2)) == 1 + 2 + 2


def test_involutive_commuting_pairs() -> None:
    q = InvolutiveQuotient(["x", "y"], commuting=[("x", "y")])
    assert q.normal_form(W("y x")) == W("x y")
    assert q.normal_form(W("x y x")) == W("y")
    assert len(q.basis(3)) == 4


def test_commutative_sorts() -> None:
    q = CommutativeQuotient(["x", "y"])
    assert q.normal_form(W("y x y")) == W("x y y")
    assert len(q.basis(3)) == 10


def test_reduce_polynomial_merges_terms() -> None:
    q = CommutativeQuotient(["x", "y"])
    p = StarPolynomial.monomial(W("x y")) - StarPolynomial.monomial(W("y x"))
    assert reduce_polynomial(q, p).is_zero()


def test_cyclic_chain_rotates() -> None:
    q = InvolutiveQuotient(["x", "y"])
    rep, steps = cyclic_chain(q, W("y x"))
    assert rep == W("x y")
    assert steps == [(W("y"), W("x"))]
    assert cyclic_chain(q, W("x y")) == (W("x y"), [])


def test_motzkin_terms() -> None:
    m = motzkin()
    assert len(m) == 4
    assert m.coefficient(Word()) == 1
    assert m.degree() == 6
