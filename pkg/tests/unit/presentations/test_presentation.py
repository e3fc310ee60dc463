from pathlib import Path

import pytest

from ncsos_workbench.errors import ParseError
from ncsos_workbench.presentations.presentation import (
    GroupPresentation,
    format_presentation,
    free_reduce,
    involutionize,
    load_presentation,
    parse_presentation,
)
from ncsos_workbench.words.word import Word, parse_word

DATA_DIR = Path(__file__).resolve().parents[3] / "ncsos_workbench_data" / "presentations"


def test_free_reduce() -> None:
    assert free_reduce(parse_word("a b b~ a~ c")) == parse_word("c")
    assert free_reduce(parse_word("a~ a")) == Word()


def test_build_normalizes_relators() -> None:
    p = GroupPresentation.build(["a", "b"], [parse_word("a b b~"), parse_word("a"), parse_word("b b~")], ["b"])
    assert p.relators == (parse_word("b b"), parse_word("a"))


def test_invalid_presentations() -> None:
    with pytest.raises(ValueError):
        GroupPresentation(("a",), (parse_word("b"),))
    with pytest.raises(ValueError):
        GroupPresentation(("a",), (parse_word("a a~"),))
    with pytest.raises(ValueError):
        GroupPresentation(("a",), (), frozenset({"a"}))


def test_shipped_presentations() -> None:
    dihedral = load_presentation(DATA_DIR / "infinite_dihedral.pres")
    assert dihedral.generators == ("a", "b")
    assert set(dihedral.relators) == {parse_word("a a"), parse_word("b b")}
    integers = load_presentation(DATA_DIR / "integers.pres")
    assert integers.relators == ()


def test_involutionize_integers() -> None:
    integers = load_presentation(DATA_DIR / "integers.pres")
    cover, mapping = involutionize(integers)
    assert cover.generators == ("s_a", "t_a")
    assert cover.involutions == frozenset({"s_a", "t_a"})
    assert mapping["a"] == parse_word("s_a t_a")


def test_format_parse_round_trip() -> None:
    p = GroupPresentation.build(["a", "b"], [parse_word("a b a~ b~")], ["a"])
    assert parse_presentation(format_presentation(p)) == p


def test_parse_errors() -> None:
    with pytest.raises(ParseError):
        parse_presentation("[generators]\na\n")
    with pytest.raises(ParseError):
        parse_presentation("a\n[gens]\na\n")
    with pytest.raises(ParseError):
        parse_presentation("[gens]\na\n[rels]\na c\n")
