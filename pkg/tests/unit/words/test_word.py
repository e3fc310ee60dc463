import pytest

from ncsos_workbench.errors import ParseError
from ncsos_workbench.words.word import EMPTY, Generator, Word, parse_word


def test_parse_word_tokens() -> None:
    w = parse_word("z[0,-1]~ x[2,3] J")
    assert w.letters == (
        Generator("z", True, (0, -1)),
        Generator("x", False, (2, 3)),
        Generator("J"),
    )
    assert w.letters[0].m == 0 and w.letters[0].i == -1


def test_empty_word_renders_as_one() -> None:
    assert parse_word("1") == EMPTY
    assert parse_word("   ") == EMPTY
    assert str(EMPTY) == "1"
    assert str(parse_word("a b~")) == "a b~"


def test_star_reverses_and_stars() -> None:
    w = Word.of("a", "b", Generator("c", True))
    assert w.star() == Word.of("c", Generator("b", True), Generator("a", True))
    assert w.star().star() == w
    assert w.reverse() == Word.of(Generator("c", True), "b", "a")


def test_power() -> None:
    w = Word.of("a", "b")
    assert w.power(0) == EMPTY
    assert w.power(2) == Word.of("a", "b", "a", "b")
    assert w.power(-1) == w.star()


def test_degree_lex_order() -> None:
    words = [Word.of("b"), Word.of("a", "a"), EMPTY, Word.of("a")]
    assert sorted(words, key=lambda w: w.sort_key) == [EMPTY, Word.of("a"), Word.of("b"), Word.of("a", "a")]


def test_parse_error_points_at_token() -> None:
    with pytest.raises(ParseError) as excinfo:
        parse_word("a b[1] c")
    assert excinfo.value.position == 2
    assert excinfo.value.caret().endswith("  ^")


def test_generator_rejects_bad_indices() -> None:
    with pytest.raises(ValueError):
        Generator("x", indices=(1,))
