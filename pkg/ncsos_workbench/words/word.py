"""Generators and words of the free *-monoid."""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

from ncsos_workbench.errors import ParseError

TOKEN_PATTERN = re.compile(r"([A-Za-z][A-Za-z0-9_]*)(?:\[(-?\d+),(-?\d+)\])?(~?)")
STAR_MARK = "~"


@dataclass(frozen=True)
class Generator:
    """A single letter, optionally starred and optionally indexed.

    In group algebras the star of a letter is its inverse, so the same type
    carries both x* and x^{-1}.
    """

    name: str
    starred: bool = False
    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        """Validate the token name and index arity."""
        if not self.name:
            raise ValueError("generator name must be nonempty")
        if self.indices and len(self.indices) != 2:
            raise ValueError(f"indexed generators take (m, i), got {self.indices}")

    def star(self) -> Generator:
        """Return the starred (or unstarred) copy of this letter."""
        return Generator(self.name, not self.starred, self.indices)

    def plain(self) -> Generator:
        """Return the unstarred copy of this letter."""
        if not self.starred:
            return self
        return Generator(self.name, False, self.indices)

    @property
    def m(self) -> int:
        """First index of an indexed letter."""
        return self.indices[0]

    @property
    def i(self) -> int:
        """Second index of an indexed letter."""
        return self.indices[1]

    def sort_key(self) -> tuple:
        """Key for the fixed generator order."""
        return (self.name, self.indices, self.starred)

    def __str__(self) -> str:
        """Render in token syntax, e.g. ``x[0,-1]~``."""
        text = self.name
        if self.indices:
            text += f"[{self.indices[0]},{self.indices[1]}]"
        if self.starred:
            text += STAR_MARK
        return text


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters; no interpretation is applied."""

    letters: tuple[Generator, ...] = ()

    @classmethod
    def of(cls, *letters: Generator | str) -> Word:
        """Build a word from letters or bare generator names."""
        return cls(tuple(Generator(x) if isinstance(x, str) else x for x in letters))

    def star(self) -> Word:
        """Reverse the word and star every letter."""
        return Word(tuple(x.star() for x in reversed(self.letters)))

    def reverse(self) -> Word:
        """Reverse the word without starring (the omega map on monomials)."""
        return Word(tuple(reversed(self.letters)))

    def power(self, k: int) -> Word:
        """Return w^k for k >= 0 and (w*)^{-k} for k < 0."""
        if k >= 0:
            return Word(self.letters * k)
        return self.star().power(-k)

    @property
    def degree(self) -> int:
        """Number of letters."""
        return len(self.letters)

    @cached_property
    def sort_key(self) -> tuple:
        """Degree-lexicographic key over the fixed generator order."""
        return (len(self.letters), tuple(x.sort_key() for x in self.letters))

    def __mul__(self, other: Word) -> Word:
        """Concatenate two words."""
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        """Number of letters."""
        return len(self.letters)

    def __iter__(self) -> Iterator[Generator]:
        """Iterate over the letters."""
        return iter(self.letters)

    def __getitem__(self, item: slice) -> Word:
        """Slice into a sub-word."""
        return Word(self.letters[item])

    def __str__(self) -> str:
        """Render as space separated tokens, ``1`` for the empty word."""
        if not self.letters:
            return "1"
        return " ".join(str(x) for x in self.letters)


EMPTY = Word()


def concat(words: Iterable[Word]) -> Word:
    """Concatenate a sequence of words."""
    letters: list[Generator] = []
    for w in words:
        letters.extend(w.letters)
    return Word(tuple(letters))


def parse_token(text: str, offset: int = 0, line: str | None = None) -> Generator:
    """Parse one token like ``z[0,-1]~``."""
    match = TOKEN_PATTERN.fullmatch(text)
    if match is None:
        raise ParseError(
            f"malformed token {text!r}", line if line is not None else text, offset
        )
    name, m, i, star = match.groups()
    indices = (int(m), int(i)) if m is not None else ()
    return Generator(name, bool(star), indices)


def parse_word(text: str) -> Word:
    """Parse whitespace separated tokens; ``1`` or an empty string is the empty word."""
    stripped = text.strip()
    if stripped in ("", "1"):
        return EMPTY
    letters = []
    for match in re.finditer(r"\S+", text):
        letters.append(parse_token(match.group(0), match.start(), text))
    return Word(tuple(letters))
