"""Exact *-polynomials over the free *-algebra and its tensor square.

Coefficients are ``fractions.Fraction`` throughout. Monomials are stored
unreduced; quotient semantics live in the callers (see ``involutive_reduce``
for the free product of copies of Z_2).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping
from fractions import Fraction
from typing import Union

from ncsos_workbench.words.word import EMPTY, Generator, Word

Scalar = Union[int, Fraction]


def _clean(terms: Mapping) -> dict:
    return {k: Fraction(v) for k, v in terms.items() if v != 0}


class StarPolynomial:
    """Finite rational combination of *-monomials with zero terms removed."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None) -> None:
        """Create a polynomial from a word -> coefficient map."""
        self._terms: dict[Word, Fraction] = _clean(terms or {})

    @classmethod
    def constant(cls, c: Scalar) -> StarPolynomial:
        """The scalar c times the empty monomial."""
        return cls({EMPTY: c})

    @classmethod
    def monomial(cls, word: Word, coefficient: Scalar = 1) -> StarPolynomial:
        """A single term."""
        return cls({word: coefficient})

    @classmethod
    def letter(cls, name: str, starred: bool = False) -> StarPolynomial:
        """The polynomial consisting of one unindexed letter."""
        return cls({Word((Generator(name, starred),)): 1})

    @classmethod
    def sum(cls, polys: Iterable[StarPolynomial]) -> StarPolynomial:
        """Add up an iterable of polynomials."""
        acc: dict[Word, Fraction] = {}
        for p in polys:
            for w, c in p._terms.items():
                acc[w] = acc.get(w, Fraction(0)) + c
        return cls(acc)

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        """Read-only view of the term map."""
        return self._terms

    def items(self) -> Iterator[tuple[Word, Fraction]]:
        """Terms in degree-lexicographic order."""
        for w in sorted(self._terms, key=lambda w: w.sort_key):
            yield w, self._terms[w]

    def coefficient(self, word: Word) -> Fraction:
        """Coefficient of a monomial (zero if absent)."""
        return self._terms.get(word, Fraction(0))

    def support(self) -> list[Word]:
        """Monomials with nonzero coefficient, degree-lex ordered."""
        return [w for w, _ in self.items()]

    def is_zero(self) -> bool:
        """Whether every coefficient vanishes."""
        return not self._terms

    def degree(self) -> int:
        """Largest monomial degree (0 for the zero polynomial)."""
        return max((w.degree for w in self._terms), default=0)

    def letters(self) -> set[Generator]:
        """Unstarred letters occurring in the support."""
        return {x.plain() for w in self._terms for x in w}

    def star(self) -> StarPolynomial:
        """Antilinear involution; rational coefficients are fixed."""
        return StarPolynomial({w.star(): c for w, c in self._terms.items()})

    def is_self_adjoint(self) -> bool:
        """Whether p* = p."""
        return self.star() == self

    def norm1(self) -> Fraction:
        """Sum of absolute coefficients."""
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    def norm11(self) -> Fraction:
        """Sum of absolute coefficients weighted by monomial degree."""
        return sum((abs(c) * w.degree for w, c in self._terms.items()), Fraction(0))

    def map_words(self, fn: Callable[[Word], Word]) -> StarPolynomial:
        """Apply a word map term by term, collecting equal images."""
        acc: dict[Word, Fraction] = {}
        for w, c in self._terms.items():
            image = fn(w)
            acc[image] = acc.get(image, Fraction(0)) + c
        return StarPolynomial(acc)

    def substitute(self, fn: Callable[[Generator], StarPolynomial]) -> StarPolynomial:
        """Extend a letter -> polynomial map to a unital homomorphism."""
        cache: dict[Generator, StarPolynomial] = {}
        out = []
        for w, c in self._terms.items():
            prod = StarPolynomial.constant(c)
            for x in w:
                if x not in cache:
                    cache[x] = fn(x)
                prod = prod * cache[x]
            out.append(prod)
        return StarPolynomial.sum(out)

    def __add__(self, other: StarPolynomial | Scalar) -> StarPolynomial:
        """Exact addition."""
        other = _lift(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, Fraction(0)) + c
        return StarPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> StarPolynomial:
        """Negation."""
        return StarPolynomial({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: StarPolynomial | Scalar) -> StarPolynomial:
        """Exact subtraction."""
        return self + (-_lift(other))

    def __rsub__(self, other: Scalar) -> StarPolynomial:
        """Scalar minus polynomial."""
        return _lift(other) - self

    def __mul__(self, other: StarPolynomial | Word | Scalar) -> StarPolynomial:
        """Product with a polynomial, a monomial or a scalar."""
        if isinstance(other, (int, Fraction)):
            return StarPolynomial({w: c * other for w, c in self._terms.items()})
        if isinstance(other, Word):
            return StarPolynomial({w * other: c for w, c in self._terms.items()})
        acc: dict[Word, Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 * w2
                acc[w] = acc.get(w, Fraction(0)) + c1 * c2
        return StarPolynomial(acc)

    def __rmul__(self, other: Word | Scalar) -> StarPolynomial:
        """Scalar or monomial on the left."""
        if isinstance(other, Word):
            return StarPolynomial({other * w: c for w, c in self._terms.items()})
        return self * other

    def __pow__(self, k: int) -> StarPolynomial:
        """Non-negative integer power."""
        if k < 0:
            raise ValueError("polynomials only have non-negative powers")
        out = StarPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        """Equality of canonical term maps."""
        if isinstance(other, (int, Fraction)):
            other = StarPolynomial.constant(other)
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        """Number of terms."""
        return len(self._terms)

    def __repr__(self) -> str:
        """Compact human readable form."""
        if not self._terms:
            return "StarPolynomial(0)"
        parts = [f"{c} {w}" for w, c in self.items()]
        return "StarPolynomial(" + " + ".join(parts) + ")"


def _lift(value: StarPolynomial | Scalar) -> StarPolynomial:
    if isinstance(value, StarPolynomial):
        return value
    return StarPolynomial.constant(value)


def word_poly(word: Word, coefficient: Scalar = 1) -> StarPolynomial:
    """Shorthand for a single-term polynomial."""
    return StarPolynomial.monomial(word, coefficient)


def omega(p: StarPolynomial, generators: Iterable[Generator] | None = None) -> StarPolynomial:
    """Reverse every monomial: x1 x2 ... xn -> xn ... x2 x1.

    Args:
        p: the polynomial to map.
        generators: if given, the support must only use these letters (or their stars).
    """
    if generators is not None:
        allowed = {x.plain() for x in generators}
        stray = p.letters() - allowed
        if stray:
            raise ValueError(f"polynomial uses letters outside the generating set: {stray}")
    return p.map_words(Word.reverse)


def involutive_reduce(word: Word) -> Word:
    """Normal form in the free product of Z_2's: drop stars, cancel equal neighbours."""
    stack: list[Generator] = []
    for x in word.letters:
        x = x.plain()
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return Word(tuple(stack))


def quotient_involutive(p: StarPolynomial) -> StarPolynomial:
    """Image of p in the group algebra of the free product of Z_2's."""
    return p.map_words(involutive_reduce)


class TensorPolynomial:
    """Rational combination of elementary tensors u ⊗ v of monomials."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[Word, Word], Scalar] | None = None) -> None:
        """Create a tensor polynomial from a (left, right) -> coefficient map."""
        self._terms: dict[tuple[Word, Word], Fraction] = _clean(terms or {})

    @classmethod
    def tensor(cls, left: StarPolynomial, right: StarPolynomial) -> TensorPolynomial:
        """Elementary tensor of two polynomials."""
        acc: dict[tuple[Word, Word], Fraction] = {}
        for w1, c1 in left.terms.items():
            for w2, c2 in right.terms.items():
                acc[(w1, w2)] = acc.get((w1, w2), Fraction(0)) + c1 * c2
        return cls(acc)

    @classmethod
    def left(cls, p: StarPolynomial) -> TensorPolynomial:
        """p ⊗ 1."""
        return cls.tensor(p, StarPolynomial.constant(1))

    @classmethod
    def right(cls, p: StarPolynomial) -> TensorPolynomial:
        """1 ⊗ p."""
        return cls.tensor(StarPolynomial.constant(1), p)

    @classmethod
    def sum(cls, polys: Iterable[TensorPolynomial]) -> TensorPolynomial:
        """Add up an iterable of tensor polynomials."""
        acc: dict[tuple[Word, Word], Fraction] = {}
        for p in polys:
            for k, c in p._terms.items():
                acc[k] = acc.get(k, Fraction(0)) + c
        return cls(acc)

    @property
    def terms(self) -> Mapping[tuple[Word, Word], Fraction]:
        """Read-only view of the term map."""
        return self._terms

    def items(self) -> Iterator[tuple[tuple[Word, Word], Fraction]]:
        """Terms ordered by (left, right) degree-lex keys."""
        for k in sorted(self._terms, key=lambda k: (k[0].sort_key, k[1].sort_key)):
            yield k, self._terms[k]

    def is_zero(self) -> bool:
        """Whether every coefficient vanishes."""
        return not self._terms

    def star(self) -> TensorPolynomial:
        """Factor-wise star."""
        return TensorPolynomial({(u.star(), v.star()): c for (u, v), c in self._terms.items()})

    def flip(self) -> TensorPolynomial:
        """Swap the tensor factors."""
        return TensorPolynomial({(v, u): c for (u, v), c in self._terms.items()})

    def is_self_adjoint(self) -> bool:
        """Whether the tensor polynomial equals its star."""
        return self.star() == self

    def norm1(self) -> Fraction:
        """Sum of absolute coefficients."""
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    def __add__(self, other: TensorPolynomial) -> TensorPolynomial:
        """Exact addition."""
        return TensorPolynomial.sum([self, other])

    def __neg__(self) -> TensorPolynomial:
        """Negation."""
        return TensorPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: TensorPolynomial) -> TensorPolynomial:
        """Exact subtraction."""
        return self + (-other)

    def __mul__(self, other: TensorPolynomial | Scalar) -> TensorPolynomial:
        """Factor-wise product (u ⊗ v)(u' ⊗ v') = uu' ⊗ vv', or scalar product."""
        if isinstance(other, (int, Fraction)):
            return TensorPolynomial({k: c * other for k, c in self._terms.items()})
        acc: dict[tuple[Word, Word], Fraction] = {}
        for (u1, v1), c1 in self._terms.items():
            for (u2, v2), c2 in other._terms.items():
                k = (u1 * u2, v1 * v2)
                acc[k] = acc.get(k, Fraction(0)) + c1 * c2
        return TensorPolynomial(acc)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        """Equality of canonical term maps."""
        if not isinstance(other, TensorPolynomial):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        """Number of terms."""
        return len(self._terms)

    def __repr__(self) -> str:
        """Compact human readable form."""
        parts = [f"{c} {u} | {v}" for (u, v), c in self.items()]
        return "TensorPolynomial(" + " + ".join(parts or ["0"]) + ")"
