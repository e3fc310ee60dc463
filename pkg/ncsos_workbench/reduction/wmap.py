"""Rounding relations: the sets W(f) whose smallness forces a trace to factor through Z_2's.

For a monomial u = x_1 ... x_n the set W(u) holds, for every position i,

    (x_i x_i* - 1) s_i,  (x_i* x_i - 1) s_i,  (x_i^2 - 1) s_i,
    ((x_i*)^2 - 1) s_i,  (x_i - x_i*) s_i,

with s_i = x_{i+1} ... x_n. W(f) is the union over the support of f. Every
element maps to zero in the group algebra of the free product of Z_2's.
"""

from __future__ import annotations

from collections.abc import Iterable

from ncsos_workbench.reduction.relations import Relation, RelationSet
from ncsos_workbench.words.polynomial import StarPolynomial, TensorPolynomial, word_poly
from ncsos_workbench.words.word import Generator, Word

FAMILY = "W"
KINDS = ("xx*", "x*x", "x^2", "x*^2", "x-x*")


def _kernel(x: Generator, kind: str) -> StarPolynomial:
    xw, xs = Word((x,)), Word((x.star(),))
    if kind == "xx*":
        return word_poly(xw * xs) - 1
    if kind == "x*x":
        return word_poly(xs * xw) - 1
    if kind == "x^2":
        return word_poly(xw * xw) - 1
    if kind == "x*^2":
        return word_poly(xs * xs) - 1
    return word_poly(xw) - word_poly(xs)


def monomial_wmap(u: Word) -> list[Relation]:
    """W(u) for a single monomial, position by position."""
    out = []
    for i, x in enumerate(u.letters):
        suffix = u[i + 1 :]
        for kind in KINDS:
            p = _kernel(x, kind) * suffix
            out.append(Relation(FAMILY, f"W:{kind}@{x}|{suffix}", p))
    return out


def wmap(f: StarPolynomial | Iterable[StarPolynomial]) -> RelationSet:
    """W(f), or the union of W over several polynomials; W(1) is empty."""
    polys = [f] if isinstance(f, StarPolynomial) else list(f)
    words: dict[Word, None] = {}
    for p in polys:
        for w in p.support():
            words[w] = None
    relations = []
    for w in words:
        relations.extend(monomial_wmap(w))
    return RelationSet(relations, "W")


def tensor_wmap(
    w_m: RelationSet, generators: Iterable[Generator]
) -> list[TensorPolynomial]:
    """The tensor relation set: s (x) 1 for s in W_m, then s (x) 1 and 1 (x) s for s in W(x)."""
    out = [TensorPolynomial.left(r.polynomial) for r in w_m]
    for x in generators:
        for r in monomial_wmap(Word((x,))):
            out.append(TensorPolynomial.left(r.polynomial))
            out.append(TensorPolynomial.right(r.polynomial))
    return out


def sync_terms(generators: Iterable[Generator]) -> list[TensorPolynomial]:
    """x (x) 1 - 1 (x) x for every generator x."""
    out = []
    for x in generators:
        xp = StarPolynomial.monomial(Word((x,)))
        out.append(TensorPolynomial.left(xp) - TensorPolynomial.right(xp))
    return out
