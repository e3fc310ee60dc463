"""The relation sets R_m of the algebras A(m).

Families:
    R0  x* x = x x* = x^2 = 1 for every letter
    R1  r = 1 for every relator r of the provider's presentation of H
    R2  U and Q commute with X, Z, S, T and J
    R3  [Xt, Q], Xt Q - X_{m0} Q and the same for Zt
    R4  U Xt U* - S Xt S* and U Zt U* - T Zt T*
    R5  [P, Q]
    R6  (P + Xt P Xt - U P U*)(1 + J Xt Zt Xt Zt)

R0 is carried for reference; it holds automatically in the free product of
copies of Z_2 where all verification happens, so the defining set used by the
compilers is R1..R6.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ncsos_workbench.errors import ParseError
from ncsos_workbench.presentations.provider import PresentationProvider
from ncsos_workbench.reduction.alphabet import (
    ONE,
    P,
    Q,
    S,
    T,
    U,
    U_STAR,
    XT,
    ZT,
    designated,
    letters,
    x_mi,
    z_mi,
)
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.formats import format_polynomial, parse_polynomial, parse_rational
from ncsos_workbench.words.polynomial import StarPolynomial, word_poly
from ncsos_workbench.words.word import Word

logger = get_logger(__name__)

FAMILIES = ("R0", "R1", "R2", "R3", "R4", "R5", "R6")
R6_BOUND = Fraction(6)
DEFAULT_BOUND = Fraction(2)
DEFAULT_I_BOUND = 1


@dataclass(frozen=True, eq=False)
class Relation:
    """A labeled relation r (meaning r = 0) with its declared operator-norm bound."""

    family: str
    label: str
    polynomial: StarPolynomial
    declared_bound: Fraction | None = None

    def norm1(self) -> Fraction:
        """Sum of absolute coefficients."""
        return self.polynomial.norm1()

    def norm11(self) -> Fraction:
        """Degree-weighted coefficient sum."""
        return self.polynomial.norm11()

    def norm_bound(self) -> Fraction:
        """min(declared bound, norm1); norm1 alone when nothing is declared."""
        if self.declared_bound is None:
            return self.norm1()
        return min(self.declared_bound, self.norm1())

    def same_as(self, other: Relation) -> bool:
        """Label and polynomial equality."""
        return self.label == other.label and self.polynomial == other.polynomial


class RelationSet:
    """An indexed collection of relations; decompositions refer to positions."""

    def __init__(self, relations: Iterable[Relation], name: str = "") -> None:
        """Create a set, dropping relations whose polynomial repeats an earlier one."""
        seen: set[tuple] = set()
        kept = []
        for r in relations:
            key = tuple(r.polynomial.items())
            if key in seen or r.polynomial.is_zero():
                continue
            seen.add(key)
            kept.append(r)
        self.relations: tuple[Relation, ...] = tuple(kept)
        self.name = name
        self._by_label = {r.label: i for i, r in enumerate(self.relations)}

    def __len__(self) -> int:
        """Number of relations."""
        return len(self.relations)

    def __iter__(self) -> Iterator[Relation]:
        """Iterate in index order."""
        return iter(self.relations)

    def __getitem__(self, index: int) -> Relation:
        """Relation at a position."""
        return self.relations[index]

    def polynomial(self, index: int, starred: bool = False) -> StarPolynomial:
        """r or r*."""
        p = self.relations[index].polynomial
        return p.star() if starred else p

    def index_of(self, label: str) -> int:
        """Position of the relation with this label."""
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"no relation labeled {label!r} in {self.name or 'relation set'}")

    def family(self, name: str) -> list[Relation]:
        """Relations of one family, in order."""
        return [r for r in self.relations if r.family == name]

    def family_sizes(self) -> dict[str, int]:
        """Number of relations per family."""
        sizes: dict[str, int] = {}
        for r in self.relations:
            sizes[r.family] = sizes.get(r.family, 0) + 1
        return sizes

    def defining(self) -> RelationSet:
        """The relations R1..R6 without the R0 letter relations."""
        return RelationSet((r for r in self.relations if r.family != "R0"), self.name)

    def compatible(self, other: RelationSet) -> bool:
        """Whether both sets list the same relations in the same order."""
        if self is other:
            return True
        if len(self) != len(other):
            return False
        return all(a.same_as(b) for a, b in zip(self.relations, other.relations))

    def polynomials(self) -> list[StarPolynomial]:
        """All relation polynomials in index order."""
        return [r.polynomial for r in self.relations]


def commutator(a: StarPolynomial, b: StarPolynomial) -> StarPolynomial:
    """The algebra commutator ab - ba."""
    return a * b - b * a


def _rel(family: str, label: str, p: StarPolynomial) -> Relation:
    bound = R6_BOUND if family == "R6" else DEFAULT_BOUND
    return Relation(family, label, p, bound)


def letter_relations() -> list[Relation]:
    """R0: x* x - 1, x x* - 1 and x^2 - 1 for every letter."""
    out = []
    for x in letters():
        xw = Word((x,))
        xs = Word((x.star(),))
        out.append(_rel("R0", f"R0:{x}~{x}", word_poly(xs * xw) - 1))
        out.append(_rel("R0", f"R0:{x}{x}~", word_poly(xw * xs) - 1))
        out.append(_rel("R0", f"R0:{x}^2", word_poly(xw * xw) - 1))
    return out


def relations_Rm(
    m: int, provider: PresentationProvider, i_bound: int = DEFAULT_I_BOUND
) -> RelationSet:
    """The relations R0..R6 of A(m) over the letters of H and the auxiliary letters.

    Args:
        m: the machine input, m >= 1.
        provider: source of the relators of H (family R1).
        i_bound: index window requested from the provider.
    """
    if m < 1:
        raise ValueError(f"relations are defined for m >= 1, got {m}")
    relations = letter_relations()
    for r in provider.presentation(m, i_bound).relators:
        relations.append(_rel("R1", f"R1:{r}", word_poly(r) - 1))

    Up, Us = word_poly(U), word_poly(U_STAR)
    for name, word in designated().items():
        relations.append(_rel("R2", f"R2:[U,{name}]", commutator(Up, word_poly(word))))
    for name, word in designated().items():
        relations.append(_rel("R2", f"R2:[Q,{name}]", commutator(Q, word_poly(word))))

    Xt, Zt = word_poly(XT), word_poly(ZT)
    relations.append(_rel("R3", "R3:[Xt,Q]", commutator(Xt, Q)))
    relations.append(_rel("R3", "R3:XtQ-Xm0Q", (Xt - word_poly(x_mi(m, 0))) * Q))
    relations.append(_rel("R3", "R3:[Zt,Q]", commutator(Zt, Q)))
    relations.append(_rel("R3", "R3:ZtQ-Zm0Q", (Zt - word_poly(z_mi(m, 0))) * Q))

    Sp, Tp = word_poly(S), word_poly(T)
    relations.append(
        _rel("R4", "R4:UXtU*-SXtS*", Up * Xt * Us - Sp * Xt * Sp.star())
    )
    relations.append(
        _rel("R4", "R4:UZtU*-TZtT*", Up * Zt * Us - Tp * Zt * Tp.star())
    )

    relations.append(_rel("R5", "R5:[P,Q]", commutator(P, Q)))
    relations.append(_rel("R6", "R6", r6_polynomial()))
    out = RelationSet(relations, f"R_{m}")
    logger.debug(f"relations for m={m}: {out.family_sizes()}")
    return out


def r6_polynomial() -> StarPolynomial:
    """(P + Xt P Xt - U P U*)(1 + J Xt Zt Xt Zt)."""
    Xt = word_poly(XT)
    Up, Us = word_poly(U), word_poly(U_STAR)
    left = P + Xt * P * Xt - Up * P * Us
    return left * (ONE + word_poly(Word.of("J", "Xt", "Zt", "Xt", "Zt")))


def format_relations(relations: RelationSet) -> str:
    """Render as ``@ family | label | bound`` headers followed by polynomial lines."""
    blocks = []
    for r in relations:
        bound = "-" if r.declared_bound is None else str(r.declared_bound)
        blocks.append(f"@ {r.family} | {r.label} | {bound}\n" + format_polynomial(r.polynomial))
    return "".join(blocks)


def parse_relations(text: str, name: str = "") -> RelationSet:
    """Inverse of ``format_relations``."""
    relations: list[Relation] = []
    header: tuple[str, str, Fraction | None] | None = None
    body: list[str] = []

    def flush() -> None:
        if header is not None:
            relations.append(Relation(header[0], header[1], parse_polynomial("\n".join(body)), header[2]))

    for raw in text.splitlines():
        if raw.startswith("@"):
            flush()
            parts = [p.strip() for p in raw[1:].split("|")]
            if len(parts) != 3:
                raise ParseError("relation header needs 'family | label | bound'", raw, 0)
            bound = None if parts[2] == "-" else parse_rational(parts[2], raw, raw.rindex("|") + 1)
            header = (parts[0], parts[1], bound)
            body = []
        elif raw.split("#", 1)[0].strip():
            if header is None:
                raise ParseError("polynomial line before the first relation header", raw, 0)
            body.append(raw)
    flush()
    return RelationSet(relations, name)


def write_relations(relations: RelationSet, path: str | Path) -> None:
    """Write a relations file."""
    Path(path).write_text(format_relations(relations))


def load_relations(path: str | Path) -> RelationSet:
    """Read a relations file."""
    path = Path(path)
    return parse_relations(path.read_text(), path.stem)
