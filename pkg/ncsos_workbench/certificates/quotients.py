"""Monomial quotients in which Gram searches index their bases.

A quotient fixes a canonical representative for every monomial, the adjoint
of a representative and the list of representatives up to a degree. Three
are provided: the free *-algebra (no reduction), the group algebra of a
right-angled Coxeter group (self-adjoint involutions, optionally commuting in
pairs) and the commutative algebra of self-adjoint variables.
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from typing import Protocol

from ncsos_workbench.words.polynomial import StarPolynomial
from ncsos_workbench.words.word import EMPTY, Generator, Word


class Quotient(Protocol):
    """Canonical monomials of a *-algebra generated by finitely many letters."""

    generators: tuple[Generator, ...]

    def normal_form(self, word: Word) -> Word:
        """Canonical representative of a monomial."""

    def adjoint(self, word: Word) -> Word:
        """Canonical representative of word*."""

    def basis(self, degree: int) -> list[Word]:
        """Canonical monomials of degree at most ``degree``."""


def reduce_polynomial(quotient: Quotient, p: StarPolynomial) -> StarPolynomial:
    """Image of p with every monomial replaced by its canonical representative."""
    return p.map_words(quotient.normal_form)


def _letters(names: Iterable[str | Generator]) -> tuple[Generator, ...]:
    out = tuple(x if isinstance(x, Generator) else Generator(x) for x in names)
    if not out:
        raise ValueError("a quotient needs at least one generator")
    return out


def _grow(quotient: Quotient, degree: int, steps: tuple[Generator, ...]) -> list[Word]:
    if degree < 0:
        raise ValueError(f"degree must be non-negative, got {degree}")
    seen = {EMPTY: None}
    frontier = [EMPTY]
    for d in range(1, degree + 1):
        nxt = []
        for w in frontier:
            for x in steps:
                v = quotient.normal_form(w * Word((x,)))
                if len(v) == d and v not in seen:
                    seen[v] = None
                    nxt.append(v)
        frontier = nxt
    return sorted(seen, key=lambda w: w.sort_key)


class FreeStarQuotient:
    """The free *-algebra: every word over x and x* is its own representative."""

    def __init__(self, generators: Iterable[str | Generator]) -> None:
        """Create the free *-algebra on the given letters."""
        self.generators = tuple(x.plain() for x in _letters(generators))

    def normal_form(self, word: Word) -> Word:
        """Words are already canonical."""
        return word

    def adjoint(self, word: Word) -> Word:
        """Reverse and star."""
        return word.star()

    def basis(self, degree: int) -> list[Word]:
        """All words over x and x* of length at most degree."""
        steps = tuple(y for x in self.generators for y in (x, x.star()))
        return _grow(self, degree, steps)


class InvolutiveQuotient:
    """Group algebra of the right-angled Coxeter group on the letters.

    Every letter is a self-adjoint involution; the pairs in ``commuting``
    commute. With no pairs this is the free product of copies of Z_2.
    """

    def __init__(
        self,
        generators: Iterable[str | Generator],
        commuting: Iterable[tuple[str, str]] = (),
    ) -> None:
        """Create the quotient."""
        self.generators = tuple(x.plain() for x in _letters(generators))
        names = {x.name for x in self.generators}
        self._commute: set[frozenset[str]] = set()
        for a, b in commuting:
            if a not in names or b not in names or a == b:
                raise ValueError(f"bad commuting pair ({a}, {b})")
            self._commute.add(frozenset((a, b)))
        self._order = {x.name: i for i, x in enumerate(self.generators)}

    def commute(self, a: str, b: str) -> bool:
        """Whether the two letters commute."""
        return a == b or frozenset((a, b)) in self._commute

    def normal_form(self, word: Word) -> Word:
        """Cancel letter pairs that can be brought together, then take the lexicographically least shuffle."""
        stack: list[str] = []
        for x in word:
            name = x.name
            k = len(stack) - 1
            while k >= 0 and stack[k] != name and self.commute(stack[k], name):
                k -= 1
            if k >= 0 and stack[k] == name:
                del stack[k]
            else:
                stack.append(name)
        return Word(tuple(Generator(n) for n in self._least(stack)))

    def _least(self, letters: list[str]) -> list[str]:
        if not self._commute:
            return letters
        rest = list(letters)
        out = []
        while rest:
            best = None
            for i, name in enumerate(rest):
                if all(self.commute(name, prev) for prev in rest[:i]):
                    if best is None or self._order[name] < self._order[rest[best]]:
                        best = i
            out.append(rest.pop(best))
        return out

    def adjoint(self, word: Word) -> Word:
        """Letters are self-adjoint, so the adjoint is the reversed word."""
        return self.normal_form(word.reverse())

    def basis(self, degree: int) -> list[Word]:
        """Reduced words of length at most degree."""
        return _grow(self, degree, self.generators)


class CommutativeQuotient:
    """Commuting self-adjoint variables: monomials are sorted letter lists."""

    def __init__(self, generators: Iterable[str | Generator]) -> None:
        """Create the polynomial ring on the given variables."""
        self.generators = tuple(x.plain() for x in _letters(generators))
        self._order = {x.name: i for i, x in enumerate(self.generators)}

    def normal_form(self, word: Word) -> Word:
        """Sort the letters (stars dropped)."""
        return Word(tuple(sorted((x.plain() for x in word), key=lambda x: self._order[x.name])))

    def adjoint(self, word: Word) -> Word:
        """Monomials are self-adjoint."""
        return self.normal_form(word)

    def basis(self, degree: int) -> list[Word]:
        """Monomials of total degree at most degree."""
        return _grow(self, degree, self.generators)


def cyclic_chain(quotient: Quotient, word: Word) -> tuple[Word, list[tuple[Word, Word]]]:
    """Walk a monomial to the least representative of its cyclic class.

    Returns the representative and pairs (g, h) with word - rep = sum [g, h],
    each step replacing g h by the canonical form of h g.
    """
    current = quotient.normal_form(word)
    steps: list[tuple[Word, Word]] = []
    while True:
        best: tuple[Word, Word, Word] | None = None
        for k in range(1, len(current)):
            g, h = current[:k], current[k:]
            rotated = quotient.normal_form(h * g)
            if rotated.sort_key < current.sort_key and (best is None or rotated.sort_key < best[2].sort_key):
                best = (g, h, rotated)
        if best is None:
            return current, steps
        steps.append((best[0], best[1]))
        current = best[2]


def motzkin() -> StarPolynomial:
    """x^4 y^2 + x^2 y^4 - 3 x^2 y^2 + 1, positive but not a sum of squares."""
    x, y = Generator("x"), Generator("y")

    def mono(a: int, b: int) -> Word:
        return Word((x,) * a + (y,) * b)

    terms = {mono(4, 2): 1, mono(2, 4): 1, mono(2, 2): -3, EMPTY: 1}
    return StarPolynomial({w: Fraction(c) for w, c in terms.items()})

