from fractions import Fraction
from pathlib import Path

import pytest

from ncsos_workbench.decompositions.chain import ChainBuilder, make_rule
from ncsos_workbench.decompositions.decomposition import (
    Entry,
    RDecomposition,
    compose,
    from_relator_product,
    multiply,
    read_decomposition,
    scale,
    single,
    size,
    verify,
    write_decomposition,
)
from ncsos_workbench.errors import VerificationFailed
from ncsos_workbench.machines.library import halt_immediately
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.reduction.relations import Relation, RelationSet, commutator, relations_Rm
from ncsos_workbench.words.polynomial import StarPolynomial, word_poly
from ncsos_workbench.words.word import EMPTY, Word, parse_word


@pytest.fixture
def ab() -> RelationSet:
    a, b = StarPolynomial.letter("a"), StarPolynomial.letter("b")
    return RelationSet([Relation("R2", "[a,b]", commutator(a, b))], "ab")


def test_single_and_size(ab: RelationSet) -> None:
    d = single(ab, "[a,b]")
    assert verify(d)
    assert size(d).value == 1
    shifted = multiply(d, right=Word.of("a", "c"))
    assert verify(shifted)
    assert size(shifted).value == 1 + 2 * 2
    assert size(shifted).coefficient_sum == 1


def test_algebra_of_decompositions(ab: RelationSet) -> None:
    d = single(ab, "[a,b]")
    assert verify(scale(Fraction(-3, 2), d))
    assert verify(multiply(d, left=StarPolynomial.letter("c") + 2))
    both = compose(d, scale(2, d))
    assert verify(both)
    assert both.target == d.target * 3


def test_verify_reports_difference(ab: RelationSet) -> None:
    d = single(ab, "[a,b]")
    wrong = RDecomposition(ab, d.target + 1, d.entries)
    result = verify(wrong)
    assert not result
    assert result.difference == StarPolynomial.constant(1)
    missing = RDecomposition(ab, d.target, [Entry(Fraction(1), EMPTY, 5, False, EMPTY)])
    with pytest.raises(VerificationFailed):
        verify(missing)


def test_chain_builder_sorts_letters(ab: RelationSet) -> None:
    rule = make_rule(ab, "[a,b]", Word.of("b", "a"))
    chain = ChainBuilder(ab, word_poly(Word.of("b", "a", "c")) + word_poly(Word.of("c"), 2))
    assert chain.rewrite([rule]) == 1
    assert chain.current == word_poly(Word.of("a", "b", "c")) + word_poly(Word.of("c"), 2)
    assert verify(chain.decomposition())
    with pytest.raises(VerificationFailed):
        make_rule(ab, "[a,b]", Word.of("c"))


def test_relator_product() -> None:
    relations = relations_Rm(1, TruncatedProvider(halt_immediately()))
    label = relations.family("R1")[-1].label
    r = parse_word(label.removeprefix("R1:"))
    d = from_relator_product([(Word.of("X"), r, False), (EMPTY, r, True)], relations)
    assert len(d) == 2
    assert verify(d)
    with pytest.raises(ValueError):
        from_relator_product([(EMPTY, Word.of("X", "Z"), False)], relations)


def test_file_round_trip(ab: RelationSet, tmp_path: Path) -> None:
    d = compose(single(ab, "[a,b]"), multiply(single(ab, "[a,b]", starred=True), left=Word.of("c")))
    path = tmp_path / "d.dec"
    write_decomposition(d, path)
    assert (tmp_path / "d.dec.target").exists()
    assert (tmp_path / "d.dec.relations").exists()
    loaded = read_decomposition(path)
    assert len(loaded) == len(d)
    assert loaded.entries == d.entries
    assert verify(loaded)
    assert size(loaded) == size(d)
