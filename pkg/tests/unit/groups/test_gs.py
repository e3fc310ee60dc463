from fractions import Fraction

import pytest

from ncsos_workbench.errors import BudgetExhausted
from ncsos_workbench.groups.gs import GroupGS, WordProblemOutcome, expand_macros, free_retraction
from ncsos_workbench.machines.library import delay_machine, loop_forever
from ncsos_workbench.words.polynomial import StarPolynomial, word_poly
from ncsos_workbench.words.word import Word, parse_word


@pytest.fixture
def gs() -> GroupGS:
    return GroupGS(delay_machine(3))


@pytest.mark.parametrize(
    "word",
    [
        "S~ S",
        "J J",
        "S x[0,0] S~ x[0,1]",
        "T z[0,1] T~ z[0,2]",
        "W x[0,0] W~ x[1,0]",
        "x[0,4] x[0,0]",
        "x[0,-1] z[0,-1] x[0,-1] z[0,-1]",
        "X[1,2] X[1,2]",
    ],
)
def test_trivial_words(gs: GroupGS, word: str) -> None:
    outcome, _ = gs.is_trivial(parse_word(word))
    assert outcome is WordProblemOutcome.TRIVIAL


@pytest.mark.parametrize(
    "word",
    [
        "J",
        "S T S~",
        "S z[0,0] S~ z[0,0]",
        "x[0,0] z[0,0] x[0,0] z[0,0]",
    ],
)
def test_nontrivial_words(gs: GroupGS, word: str) -> None:
    outcome, _ = gs.is_trivial(parse_word(word))
    assert outcome is WordProblemOutcome.NONTRIVIAL


def test_pinch_report(gs: GroupGS) -> None:
    _, report = gs.is_trivial(parse_word("S x[0,0] S~ x[0,1]"))
    assert len(report.pinches) == 1
    assert report.pinches[0].letter == "S"
    assert report.lengths == [4, 0]
    assert report.final_word == Word()


def test_budget_exhaustion_is_reported() -> None:
    solver = GroupGS(loop_forever(), budget=2)
    outcome, _ = solver.is_trivial(parse_word("x[0,5] x[0,5]"))
    assert outcome is WordProblemOutcome.UNDECIDED_BUDGET
    with pytest.raises(BudgetExhausted):
        solver.equal(parse_word("x[0,5]"), parse_word("x[0,5]"))


def test_normal_form_pushes_subgroup_left(gs: GroupGS) -> None:
    nf = gs.normal_form(parse_word("S x[0,0]"))
    assert str(nf) == "x[0,1] S"
    assert gs.equal(parse_word("S x[0,0]"), nf.to_word())
    assert gs.normal_form(parse_word("x[0,1] S")) == nf


def test_macros_and_retraction() -> None:
    assert expand_macros(parse_word("X[1,2]")) == parse_word("S S W X W~ S~ S~")
    assert free_retraction(parse_word("S X S~ T J T~")) == Word()
    assert free_retraction(parse_word("S W")) == parse_word("S W")


def test_tau0(gs: GroupGS) -> None:
    p = word_poly(parse_word("S S~"), 2) + word_poly(parse_word("S"), 3) + StarPolynomial.constant(Fraction(1, 2))
    assert gs.tau0(p) == Fraction(5, 2)


def test_leftmost_pinch_goes_first(gs: GroupGS) -> None:
    _, report = gs.is_trivial(parse_word("T z[0,1] T~ S x[0,0] S~"))
    assert [p.letter for p in report.pinches] == ["T", "S"]
    assert [p.position for p in report.pinches] == [1, 1]
