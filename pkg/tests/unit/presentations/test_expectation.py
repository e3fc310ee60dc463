from fractions import Fraction

import numpy as np
import pytest

from ncsos_workbench.certificates.gram import GramCertificate, certificate_residual, sos_search
from ncsos_workbench.certificates.quotients import InvolutiveQuotient, reduce_polynomial
from ncsos_workbench.errors import BudgetExhausted
from ncsos_workbench.presentations.expectation import coset_expectation
from ncsos_workbench.words.polynomial import StarPolynomial, word_poly
from ncsos_workbench.words.word import Word


def test_keeps_subgroup_terms() -> None:
    p = word_poly(Word.of("a"), 2) + 3 + word_poly(Word.of("b"), Fraction(1, 2))
    subgroup = {Word(), Word.of("a")}
    assert coset_expectation(p, lambda w: w in subgroup) == word_poly(Word.of("a"), 2) + 3


def test_undecided_membership() -> None:
    with pytest.raises(BudgetExhausted):
        coset_expectation(StarPolynomial.letter("a"), lambda w: None)


@pytest.mark.parametrize("seed", range(10))
def test_expectation_of_a_square_has_a_psd_certificate(seed: int) -> None:
    dihedral = InvolutiveQuotient(["a", "b"])
    a_only = InvolutiveQuotient(["a"])
    subgroup = {Word(), Word.of("a")}
    words = dihedral.basis(3)
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(words), size=4, replace=False)
    alpha = StarPolynomial.sum(word_poly(words[int(k)], int(rng.integers(-3, 4)) or 1) for k in picks)
    square = reduce_polynomial(dihedral, alpha.star() * alpha)
    expectation = coset_expectation(square, lambda w: w in subgroup)
    result = sos_search(expectation, a_only, 1)
    assert isinstance(result, GramCertificate)
    assert result.min_eigenvalue >= -1e-8
    assert certificate_residual(result, expectation, a_only) <= 1e-8
