from fractions import Fraction

import pytest

from ncsos_workbench.errors import ParseError
from ncsos_workbench.words.formats import (
    format_polynomial,
    format_tensor,
    parse_polynomial,
    parse_tensor,
)
from ncsos_workbench.words.word import EMPTY, Word


def test_parse_polynomial_collects_terms() -> None:
    text = """
    # comment
    1/2 : a b~
    2 : 1
    1/2 : a b~
    """
    p = parse_polynomial(text)
    assert p.coefficient(EMPTY) == 2
    assert len(p) == 2
    assert parse_polynomial(format_polynomial(p)) == p


def test_parse_tensor() -> None:
    t = parse_tensor("-3/4 : a | b c\n1 : 1 | 1\n")
    assert t.terms[(Word.of("a"), Word.of("b", "c"))] == Fraction(-3, 4)
    assert parse_tensor(format_tensor(t)) == t


@pytest.mark.parametrize(
    "text",
    ["1/0 : a", "2 a b", "1 : a[1]", "x : a"],
)
def test_malformed_polynomials(text: str) -> None:
    with pytest.raises(ParseError):
        parse_polynomial(text)


def test_tensor_needs_bar() -> None:
    with pytest.raises(ParseError) as excinfo:
        parse_tensor("1 : a b")
    assert excinfo.value.text == "1 : a b"
