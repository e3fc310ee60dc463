from ncsos_workbench.reduction.alphabet import letters
from ncsos_workbench.reduction.wmap import KINDS, monomial_wmap, sync_terms, wmap
from ncsos_workbench.words.polynomial import StarPolynomial, TensorPolynomial, quotient_involutive, word_poly
from ncsos_workbench.words.word import Word


def test_monomial_wmap_size() -> None:
    u = Word.of("a", "b", "c")
    assert len(monomial_wmap(u)) == len(KINDS) * 3
    assert len(wmap(StarPolynomial.constant(1))) == 0


def test_wmap_vanishes_in_involutive_quotient() -> None:
    f = word_poly(Word.of("a", "b")) + word_poly(Word.of("b", "a"), 2) - 3
    w = wmap(f)
    assert len(w) > 0
    for r in w:
        assert quotient_involutive(r.polynomial).is_zero(), r.label


def test_wmap_suffixes() -> None:
    labels = [r.label for r in monomial_wmap(Word.of("a", "b"))]
    assert "W:x-x*@a|b" in labels
    assert "W:x^2@b|1" in labels


def test_sync_terms() -> None:
    terms = sync_terms(letters())
    assert len(terms) == len(letters())
    x = StarPolynomial.letter("Xt")
    assert TensorPolynomial.left(x) - TensorPolynomial.right(x) in terms
