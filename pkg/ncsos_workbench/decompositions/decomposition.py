"""R-decompositions f = sum_i lambda_i u_i r_i v_i and their sizes.

The ambient algebra is the group algebra of the free product of copies of Z_2
on the alphabet, so every check reduces words by x* = x and x x = 1 first.
The size of a decomposition is sum_i |lambda_i| (1 + ||r_i|| deg v_i), where
||r_i|| is the certified bound min(declared bound, ||r_i||_1).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ncsos_workbench.errors import ParseError, VerificationFailed
from ncsos_workbench.reduction.relations import RelationSet, load_relations, write_relations
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.formats import (
    format_polynomial,
    parse_polynomial,
    parse_rational,
)
from ncsos_workbench.words.polynomial import StarPolynomial, involutive_reduce, quotient_involutive
from ncsos_workbench.words.word import EMPTY, Word, parse_word

logger = get_logger(__name__)


@dataclass(frozen=True)
class Entry:
    """One summand lambda u r v; ``starred`` selects r* instead of r."""

    coefficient: Fraction
    left: Word
    index: int
    starred: bool
    right: Word


@dataclass(frozen=True)
class DecompositionSize:
    """Size of a decomposition with the per-entry contributions."""

    value: Fraction
    coefficient_sum: Fraction
    contributions: tuple[Fraction, ...]


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of ``verify``; ``difference`` is target minus expansion."""

    valid: bool
    difference: StarPolynomial

    def __bool__(self) -> bool:
        """Truthy when valid."""
        return self.valid


@dataclass(eq=False)
class RDecomposition:
    """A claimed decomposition of ``target`` over ``relations``."""

    relations: RelationSet
    target: StarPolynomial
    entries: list[Entry] = field(default_factory=list)

    def __len__(self) -> int:
        """Number of entries."""
        return len(self.entries)

    def expand(self) -> StarPolynomial:
        """Sum of the entries in the quotient algebra."""
        reduced: dict[tuple[int, bool], StarPolynomial] = {}
        acc: dict[Word, Fraction] = {}
        for e in self.entries:
            if not 0 <= e.index < len(self.relations):
                raise VerificationFailed(
                    f"entry refers to relation #{e.index}, the set has {len(self.relations)}"
                )
            key = (e.index, e.starred)
            if key not in reduced:
                reduced[key] = quotient_involutive(self.relations.polynomial(e.index, e.starred))
            for w, c in reduced[key].terms.items():
                word = involutive_reduce(e.left * w * e.right)
                acc[word] = acc.get(word, Fraction(0)) + e.coefficient * c
        return StarPolynomial(acc)


def verify(d: RDecomposition) -> VerificationResult:
    """Check target = sum of entries in the quotient algebra.

    Raises:
        VerificationFailed: when an entry refers to a relation that does not exist.
    """
    difference = quotient_involutive(d.target) - d.expand()
    result = VerificationResult(difference.is_zero(), difference)
    logger.debug(f"verified {len(d)} entries: valid={result.valid}")
    return result


def size(d: RDecomposition) -> DecompositionSize:
    """Exact size sum |lambda| (1 + normBound(r) deg v)."""
    bounds: dict[int, Fraction] = {}
    contributions = []
    total = Fraction(0)
    coefficients = Fraction(0)
    for e in d.entries:
        if e.index not in bounds:
            bounds[e.index] = d.relations[e.index].norm_bound()
        c = abs(e.coefficient) * (1 + bounds[e.index] * e.right.degree)
        contributions.append(c)
        total += c
        coefficients += abs(e.coefficient)
    return DecompositionSize(total, coefficients, tuple(contributions))


def _check_compatible(a: RDecomposition, b: RDecomposition) -> None:
    if not a.relations.compatible(b.relations):
        raise ValueError("decompositions use different relation sets")


def compose(d1: RDecomposition, d2: RDecomposition) -> RDecomposition:
    """From decompositions of f - g and g - h, one of f - h (entries are concatenated)."""
    _check_compatible(d1, d2)
    return RDecomposition(d1.relations, d1.target + d2.target, d1.entries + d2.entries)


def scale(p: StarPolynomial | Fraction | int, d: RDecomposition) -> RDecomposition:
    """A decomposition of p g from one of g."""
    if isinstance(p, StarPolynomial):
        return multiply(d, left=p)
    c = Fraction(p)
    entries = [
        Entry(c * e.coefficient, e.left, e.index, e.starred, e.right) for e in d.entries if c
    ]
    return RDecomposition(d.relations, d.target * c, entries)


def _as_poly(p: StarPolynomial | Word | None) -> StarPolynomial | None:
    if p is None or isinstance(p, StarPolynomial):
        return p
    return StarPolynomial.monomial(p)


def multiply(
    d: RDecomposition,
    left: StarPolynomial | Word | None = None,
    right: StarPolynomial | Word | None = None,
) -> RDecomposition:
    """A decomposition of left g right from one of g."""
    lp, rp = _as_poly(left), _as_poly(right)
    lterms = list(lp.terms.items()) if lp is not None else [(EMPTY, Fraction(1))]
    rterms = list(rp.terms.items()) if rp is not None else [(EMPTY, Fraction(1))]
    entries = []
    for lw, lc in lterms:
        for e in d.entries:
            for rw, rc in rterms:
                entries.append(
                    Entry(
                        lc * rc * e.coefficient,
                        involutive_reduce(lw * e.left),
                        e.index,
                        e.starred,
                        involutive_reduce(e.right * rw),
                    )
                )
    target = d.target
    if lp is not None:
        target = lp * target
    if rp is not None:
        target = target * rp
    return RDecomposition(d.relations, target, entries)


def combine(
    relations: RelationSet, parts: Iterable[tuple[Fraction | int, RDecomposition]]
) -> RDecomposition:
    """sum_k c_k d_k as one decomposition."""
    out = RDecomposition(relations, StarPolynomial())
    for c, d in parts:
        out = compose(out, scale(c, d))
    return out


def single(relations: RelationSet, label: str, starred: bool = False) -> RDecomposition:
    """The trivial decomposition (1, 1, r, 1) of r itself."""
    index = relations.index_of(label)
    return RDecomposition(
        relations,
        relations.polynomial(index, starred),
        [Entry(Fraction(1), EMPTY, index, starred, EMPTY)],
    )


def from_relator_product(
    factors: Sequence[tuple[Word, Word, bool]], relations: RelationSet
) -> RDecomposition:
    """Decomposition of w - 1 for w = z_1 r_1^{e_1} z_1^-1 ... z_k r_k^{e_k} z_k^-1.

    Each factor is ``(z, r, inverted)``; r must be a relator whose relation
    ``r - 1`` is in the set (family R1). The telescoping identity
    w - 1 = sum_k (prefix_k z_k)(r_k^{e_k} - 1) z_k^-1 gives one entry per factor,
    using (r - 1)* = r^-1 - 1 for inverted factors.

    Raises:
        ValueError: when some r is not a relator of the set.
    """
    entries = []
    prefix = EMPTY
    for z, r, inverted in factors:
        try:
            index = relations.index_of(f"R1:{r}")
        except KeyError as e:
            raise ValueError(f"{r} is not a relator of the presentation") from e
        entries.append(
            Entry(Fraction(1), involutive_reduce(prefix * z), index, inverted, involutive_reduce(z.star()))
        )
        conjugate = z * (r.star() if inverted else r) * z.star()
        prefix = prefix * conjugate
    target = StarPolynomial.monomial(prefix) - 1
    return RDecomposition(relations, target, entries)


def format_entries(d: RDecomposition) -> str:
    """Entry lines ``p/q : u : index[*] : v``."""
    lines = []
    for e in d.entries:
        star = "*" if e.starred else ""
        lines.append(f"{e.coefficient} : {e.left} : {e.index}{star} : {e.right}\n")
    return "".join(lines)


def parse_entries(text: str) -> list[Entry]:
    """Inverse of ``format_entries``; ``name = value`` header lines are skipped."""
    entries = []
    for raw in text.splitlines():
        content = raw.split("#", 1)[0]
        if not content.strip() or ("=" in content and ":" not in content):
            continue
        parts = content.split(":")
        if len(parts) != 4:
            raise ParseError("entry needs 'coefficient : u : rel#[*] : v'", raw, 0)
        offsets = [0]
        for p in parts[:-1]:
            offsets.append(offsets[-1] + len(p) + 1)
        coefficient = parse_rational(parts[0], raw, offsets[0])
        ref = parts[2].strip()
        starred = ref.endswith("*")
        digits = ref.rstrip("*")
        if not digits.isdigit():
            raise ParseError(f"malformed relation reference {ref!r}", raw, offsets[2])
        try:
            left, right = parse_word(parts[1]), parse_word(parts[3])
        except ParseError as e:
            raise ParseError(str(e), raw, e.position) from e
        entries.append(Entry(coefficient, left, int(digits), starred, right))
    return entries


def write_decomposition(d: RDecomposition, path: str | Path) -> None:
    """Write the decomposition with its target and relations next to it."""
    path = Path(path)
    target_path = path.with_name(path.name + ".target")
    relations_path = path.with_name(path.name + ".relations")
    target_path.write_text(format_polynomial(d.target))
    write_relations(d.relations, relations_path)
    header = f"target = {target_path.name}\nrelations = {relations_path.name}\n"
    path.write_text(header + format_entries(d))
    logger.info(f"wrote {len(d)} entries to {path}")


def read_decomposition(path: str | Path) -> RDecomposition:
    """Read a decomposition file and the target and relations files it names."""
    path = Path(path)
    text = path.read_text()
    refs: dict[str, str] = {}
    for raw in text.splitlines():
        content = raw.split("#", 1)[0]
        if "=" in content and ":" not in content:
            key, value = (part.strip() for part in content.split("=", 1))
            refs[key] = value
    for key in ("target", "relations"):
        if key not in refs:
            raise ParseError(f"decomposition header is missing '{key} = <file>'", text.splitlines()[0] if text else "", 0)
    target = parse_polynomial((path.parent / refs["target"]).read_text())
    relations = load_relations(path.parent / refs["relations"])
    return RDecomposition(relations, target, parse_entries(text))
