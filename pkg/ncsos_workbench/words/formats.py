"""Text formats for polynomials and tensor polynomials.

One term per line, ``p/q : tok tok~ ...`` for polynomials and
``p/q : left-word | right-word`` for tensors. ``1`` is the empty monomial;
blank lines and ``#`` comments are ignored.
"""

from collections.abc import Iterator
from fractions import Fraction

from ncsos_workbench.errors import ParseError
from ncsos_workbench.words.polynomial import StarPolynomial, TensorPolynomial
from ncsos_workbench.words.word import EMPTY, Generator, Word, parse_token


def parse_rational(text: str, line: str = "", offset: int = 0) -> Fraction:
    """Parse ``p``, ``p/q`` or a signed variant into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed coefficient {text.strip()!r}", line, offset)


def _content_lines(text: str) -> Iterator[tuple[str, str]]:
    for raw in text.splitlines():
        content = raw.split("#", 1)[0]
        if content.strip():
            yield raw, content


def _parse_word_at(text: str, line: str, offset: int) -> Word:
    stripped = text.strip()
    if stripped in ("", "1"):
        return EMPTY
    letters: list[Generator] = []
    pos = 0
    for tok in text.split():
        pos = text.index(tok, pos)
        letters.append(parse_token(tok, offset + pos, line))
        pos += len(tok)
    return Word(tuple(letters))


def _split_term(raw: str, content: str) -> tuple[Fraction, str, int]:
    if ":" not in content:
        raise ParseError("expected 'coefficient : word'", raw, len(content.rstrip()))
    coeff_text, rest = content.split(":", 1)
    coefficient = parse_rational(coeff_text, raw, 0)
    return coefficient, rest, len(coeff_text) + 1


def parse_polynomial(text: str) -> StarPolynomial:
    """Parse the one-term-per-line polynomial format."""
    terms = []
    for raw, content in _content_lines(text):
        coefficient, rest, offset = _split_term(raw, content)
        terms.append(StarPolynomial.monomial(_parse_word_at(rest, raw, offset), coefficient))
    return StarPolynomial.sum(terms)


def format_polynomial(p: StarPolynomial) -> str:
    """Render a polynomial in degree-lex term order."""
    return "".join(f"{c} : {w}\n" for w, c in p.items())


def parse_tensor(text: str) -> TensorPolynomial:
    """Parse the ``p/q : left | right`` tensor format."""
    acc: dict[tuple[Word, Word], Fraction] = {}
    for raw, content in _content_lines(text):
        coefficient, rest, offset = _split_term(raw, content)
        if "|" not in rest:
            raise ParseError("expected 'left | right'", raw, len(content.rstrip()))
        left_text, right_text = rest.split("|", 1)
        left = _parse_word_at(left_text, raw, offset)
        right = _parse_word_at(right_text, raw, offset + len(left_text) + 1)
        acc[(left, right)] = acc.get((left, right), Fraction(0)) + coefficient
    return TensorPolynomial(acc)


def format_tensor(p: TensorPolynomial) -> str:
    """Render a tensor polynomial in deterministic term order."""
    return "".join(f"{c} : {u} | {v}\n" for (u, v), c in p.items())
