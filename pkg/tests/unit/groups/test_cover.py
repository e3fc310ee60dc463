import pytest

from ncsos_workbench.groups.cover import InvolutiveCover, involutionize_word
from ncsos_workbench.machines.library import delay_machine
from ncsos_workbench.words.word import parse_word


@pytest.fixture
def cover() -> InvolutiveCover:
    return InvolutiveCover(delay_machine(3))


@pytest.mark.parametrize("word", ["t_S t_S", "s_S s_S", "t_W W t_W W", "s_T t_T T~"])
def test_trivial_in_cover(cover: InvolutiveCover, word: str) -> None:
    assert cover.is_trivial(parse_word(word))


@pytest.mark.parametrize("word", ["t_S", "t_S x[0,0] t_S", "t_S t_T"])
def test_nontrivial_in_cover(cover: InvolutiveCover, word: str) -> None:
    assert not cover.is_trivial(parse_word(word))


def test_group_words_embed(cover: InvolutiveCover) -> None:
    w = parse_word("S x[0,0] S~ x[0,1]")
    assert cover.is_trivial(involutionize_word(w))
    assert involutionize_word(parse_word("S~")) == parse_word("t_S~ s_S~")


def test_normal_form_is_canonical(cover: InvolutiveCover) -> None:
    a = cover.normal_form(parse_word("t_S S S"))
    b = cover.normal_form(parse_word("S~ S~ t_S"))
    assert a == b
    assert cover.inverse(a) == cover.normal_form(parse_word("S~ S~ t_S").star())
