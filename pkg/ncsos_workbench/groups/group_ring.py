"""Exact group ring Q[H] over the involutive cover, keyed by normal forms."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction

from ncsos_workbench.groups.cover import IDENTITY_H, CoverNormalForm, InvolutiveCover
from ncsos_workbench.groups.gs import GNormalForm
from ncsos_workbench.groups.ks import KGroup
from ncsos_workbench.words.polynomial import StarPolynomial
from ncsos_workbench.words.word import Word


class GroupRing:
    """Arithmetic context: the cover plus product caches."""

    def __init__(self, cover: InvolutiveCover) -> None:
        """Create a group ring over cover."""
        self.cover = cover
        self.k = KGroup(cover.gs.tm)
        self._products: dict[tuple[CoverNormalForm, CoverNormalForm], CoverNormalForm] = {}

    def key(self, word: Word) -> CoverNormalForm:
        """Normal form of a word (group inverses are starred letters)."""
        return self.cover.normal_form(word)

    def product(self, a: CoverNormalForm, b: CoverNormalForm) -> CoverNormalForm:
        """Cached product of two group elements."""
        if a.is_identity():
            return b
        if b.is_identity():
            return a
        pair = (a, b)
        cached = self._products.get(pair)
        if cached is None:
            if a.in_k() and b.in_k():
                nf = self.k.multiply(a.segments[0].segments[0], b.segments[0].segments[0])
                cached = CoverNormalForm((GNormalForm((nf,), ()),), ())
            else:
                cached = self.cover.multiply(a, b)
            self._products[pair] = cached
        return cached

    def element(self, terms: Mapping[CoverNormalForm, Fraction | int] | None = None) -> GroupRingElement:
        """Wrap a key -> coefficient map."""
        return GroupRingElement(self, terms or {})

    def one(self) -> GroupRingElement:
        """The unit."""
        return self.element({IDENTITY_H: 1})

    def zero(self) -> GroupRingElement:
        """The zero element."""
        return self.element({})

    def group_element(self, word: Word, coefficient: Fraction | int = 1) -> GroupRingElement:
        """coefficient times the group element of word."""
        return self.element({self.key(word): coefficient})

    def from_polynomial(self, p: StarPolynomial) -> GroupRingElement:
        """Image of a *-polynomial over the letters of H (x* = x^-1)."""
        acc: dict[CoverNormalForm, Fraction] = {}
        for word, c in p.terms.items():
            k = self.key(word)
            acc[k] = acc.get(k, Fraction(0)) + c
        return self.element(acc)

    def sum(self, elements: Iterable[GroupRingElement]) -> GroupRingElement:
        """Add up group ring elements."""
        acc: dict[CoverNormalForm, Fraction] = {}
        for e in elements:
            for k, c in e.terms.items():
                acc[k] = acc.get(k, Fraction(0)) + c
        return self.element(acc)


class GroupRingElement:
    """Finitely supported rational combination of group elements."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GroupRing, terms: Mapping[CoverNormalForm, Fraction | int]) -> None:
        """Create an element with zero terms dropped."""
        self.ring = ring
        self.terms: dict[CoverNormalForm, Fraction] = {
            k: Fraction(c) for k, c in terms.items() if c != 0
        }

    def tau0(self) -> Fraction:
        """Canonical trace: the coefficient of the identity."""
        return self.terms.get(IDENTITY_H, Fraction(0))

    def is_zero(self) -> bool:
        """Whether every coefficient vanishes."""
        return not self.terms

    def star(self) -> GroupRingElement:
        """g -> g^-1 term by term."""
        return self.ring.element({self.ring.cover.inverse(k): c for k, c in self.terms.items()})

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        """Exact addition."""
        return self.ring.sum([self, other])

    def __neg__(self) -> GroupRingElement:
        """Negation."""
        return self.ring.element({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        """Exact subtraction."""
        return self + (-other)

    def __mul__(self, other: GroupRingElement | Fraction | int) -> GroupRingElement:
        """Convolution product, or scaling by a rational."""
        if isinstance(other, (int, Fraction)):
            return self.ring.element({k: c * other for k, c in self.terms.items()})
        acc: dict[CoverNormalForm, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = self.ring.product(k1, k2)
                acc[k] = acc.get(k, Fraction(0)) + c1 * c2
        return self.ring.element(acc)

    def __rmul__(self, other: Fraction | int) -> GroupRingElement:
        """Scaling by a rational on the left."""
        return self * other

    def __eq__(self, other: object) -> bool:
        """Equality of term maps."""
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        """Readable form."""
        parts = [f"{c} [{k}]" for k, c in self.terms.items()]
        return "GroupRingElement(" + " + ".join(parts or ["0"]) + ")"
