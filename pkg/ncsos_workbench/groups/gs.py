"""Word problem for G, the iterated HNN extension of K by phi_S, phi_T and phi_W.

Input words may use ``J S T W X Z`` (with ``~`` for inverses), the raw letters
``x[m,i]``/``z[m,i]`` and the macros ``X[m,i]``/``Z[m,i]``. A word is split into
K-segments separated by stable letters; raw indices are replaced by their
representatives and each segment is put in K normal form. Pinches
``t^e g t^-e`` with g in the subgroup of t are removed leftmost first until
none is left, which decides triviality by Britton's lemma.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ncsos_workbench.errors import BudgetExhausted
from ncsos_workbench.groups.ks import (
    IDENTITY,
    J_LETTER,
    KGroup,
    KNormalForm,
    Subgroup,
    word_metrics,
    x_letter,
    z_letter,
)
from ncsos_workbench.machines.turing import TuringMachine
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.polynomial import StarPolynomial
from ncsos_workbench.words.word import Generator, Word

logger = get_logger(__name__)

STABLE_LETTERS = ("S", "T", "W")
STABLE_SUBGROUPS = {"S": Subgroup.X, "T": Subgroup.Z, "W": Subgroup.ZERO}
G_TAG_BITS = 4


def g_letter(name: str, exponent: int = 1) -> Generator:
    """A letter of the six-letter generating set; exponent -1 is the inverse."""
    return Generator(name, exponent < 0)


def x_word(m: int, i: int) -> Word:
    """X_{mi} = S^i W^m X W^-m S^-i."""
    return _conjugate("S", i, m, "X")


def z_word(m: int, i: int) -> Word:
    """Z_{mi} = T^i W^m Z W^-m T^-i."""
    return _conjugate("T", i, m, "Z")


def _conjugate(shift: str, i: int, m: int, core: str) -> Word:
    prefix = Word.of(shift).power(i) * Word.of("W").power(m)
    return prefix * Word.of(core) * prefix.star()


def expand_macros(word: Word) -> Word:
    """Replace ``X[m,i]``/``Z[m,i]`` by their defining words."""
    letters: list[Generator] = []
    for x in word:
        if x.name in ("X", "Z") and x.indices:
            expansion = (x_word if x.name == "X" else z_word)(x.m, x.i)
            letters.extend(expansion.letters)
        else:
            letters.append(x)
    return Word(tuple(letters))


class WordProblemOutcome(Enum):
    """Decision returned by the word problem solver."""

    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    UNDECIDED_BUDGET = "undecided-budget"


@dataclass(frozen=True)
class Pinch:
    """One application of t^e g t^-e = phi_t^e(g)."""

    letter: str
    exponent: int
    position: int
    subgroup: Subgroup
    element: KNormalForm
    image: KNormalForm


@dataclass
class PinchReport:
    """Replay of a Britton reduction."""

    pinches: list[Pinch] = field(default_factory=list)
    words: list[Word] = field(default_factory=list)
    lengths: list[int] = field(default_factory=list)
    max_indices: list[int] = field(default_factory=list)
    final_word: Word = Word()

    def record(self, word: Word) -> None:
        """Record the current word and its metrics."""
        length, _, max_index = word_metrics(word, G_TAG_BITS)
        self.words.append(word)
        self.lengths.append(length)
        self.max_indices.append(max_index)
        self.final_word = word


@dataclass(frozen=True)
class GNormalForm:
    """g_0 t_1^e_1 g_1 ... t_n^e_n g_n, Britton reduced and coset normalized."""

    segments: tuple[KNormalForm, ...]
    letters: tuple[tuple[str, int], ...]

    def to_word(self) -> Word:
        """Render over J, x, z and the stable letters."""
        return _assemble(self.segments, self.letters)

    def is_identity(self) -> bool:
        """Whether the element is trivial."""
        return not self.letters and self.segments[0].is_identity()

    def in_k(self) -> bool:
        """Whether the element lies in K."""
        return not self.letters

    def __str__(self) -> str:
        """Render in token syntax."""
        return str(self.to_word())


def _assemble(segments: Iterable[KNormalForm], letters: Iterable[tuple[str, int]]) -> Word:
    segments = list(segments)
    out = list(segments[0].to_word().letters)
    for (name, e), seg in zip(letters, segments[1:]):
        out.append(g_letter(name, e))
        out.extend(seg.to_word().letters)
    return Word(tuple(out))


def default_budget(word: Word, coset_pushes: bool = False) -> int:
    """2(I + ceil(N/2)) + 1 simulation steps for a word of length N and max index I.

    Coset normalization can shift an index once per stable letter, so it uses
    2(I + N) + 1 instead.
    """
    length, _, max_index = word_metrics(expand_macros(word), G_TAG_BITS)
    growth = length if coset_pushes else math.ceil(length / 2)
    return 2 * (max_index + growth) + 1


def free_retraction(word: Word) -> Word:
    """Image in the free group on S, T, W (J, X, Z and all K letters are killed)."""
    stack: list[Generator] = []
    for x in expand_macros(word):
        if x.name not in STABLE_LETTERS:
            continue
        if stack and stack[-1] == x.star():
            stack.pop()
        else:
            stack.append(x)
    return Word(tuple(stack))


class GroupGS:
    """Britton-lemma solver for G over a fixed machine.

    Args:
        tm: the machine defining h(m).
        budget: simulation budget per representative call; None means the
            per-word default 2(I + ceil(N/2)) + 1.
    """

    def __init__(self, tm: TuringMachine, budget: int | None = None) -> None:
        """Create a solver for the group attached to tm."""
        self.tm = tm
        self.budget = budget

    def k_group(self, word: Word, coset_pushes: bool = False) -> KGroup:
        """K normal form engine with the budget for this word."""
        if self.budget is not None:
            return KGroup(self.tm, self.budget)
        return KGroup(self.tm, default_budget(word, coset_pushes))

    def split(
        self, word: Word, kg: KGroup
    ) -> tuple[list[KNormalForm], list[tuple[str, int]]]:
        """Split into K-segments and stable letters.

        Raw ``x``/``z`` letters get representative indices; runs of K letters
        sharing the same m end up in one block of the segment normal form.
        """
        segments: list[list[Generator]] = [[]]
        letters: list[tuple[str, int]] = []
        for x in expand_macros(word):
            if x.name in STABLE_LETTERS and not x.indices:
                letters.append((x.name, -1 if x.starred else 1))
                segments.append([])
            elif x.name == "X" and not x.indices:
                segments[-1].append(x_letter(0, 0))
            elif x.name == "Z" and not x.indices:
                segments[-1].append(z_letter(0, 0))
            elif x.name == "J" and not x.indices:
                segments[-1].append(J_LETTER)
            elif x.name in ("x", "z") and x.indices:
                segments[-1].append(kg.canonical_letter(x))
            else:
                raise ValueError(f"letter {x} is not in the generating set of G")
        return [kg.eta(seg) for seg in segments], letters

    def _find_pinch(
        self, segments: list[KNormalForm], letters: list[tuple[str, int]], kg: KGroup
    ) -> int | None:
        """Index of the leftmost pinch, or None.

        A pinch sits between two adjacent stable letters, so each position holds at
        most one candidate and the S, T, W priority never has to break a tie.
        """
        for k in range(1, len(letters)):
            (t1, e1), (t2, e2) = letters[k - 1], letters[k]
            if t1 == t2 and e1 == -e2 and kg.membership(segments[k], STABLE_SUBGROUPS[t1]):
                return k
        return None

    def reduce(
        self, word: Word, report: PinchReport | None = None, kg: KGroup | None = None
    ) -> tuple[list[KNormalForm], list[tuple[str, int]], KGroup]:
        """Remove pinches until the word is Britton reduced.

        Raises:
            BudgetExhausted: if a representative needs more steps than allowed.
        """
        kg = kg or self.k_group(word)
        segments, letters = self.split(word, kg)
        if report is not None:
            report.record(_assemble(segments, letters))
        while True:
            k = self._find_pinch(segments, letters, kg)
            if k is None:
                return segments, letters, kg
            name, e = letters[k - 1]
            family = STABLE_SUBGROUPS[name]
            image = kg.apply_phi(family, segments[k], e)
            merged = kg.multiply(segments[k - 1], image, segments[k + 1])
            if report is not None:
                report.pinches.append(Pinch(name, e, k, family, segments[k], image))
            segments[k - 1 : k + 2] = [merged]
            del letters[k - 1 : k + 1]
            if report is not None:
                report.record(_assemble(segments, letters))

    def is_trivial(self, word: Word) -> tuple[WordProblemOutcome, PinchReport]:
        """Decide whether word is the identity of G."""
        report = PinchReport()
        try:
            segments, letters, _ = self.reduce(word, report)
        except BudgetExhausted as e:
            logger.warning(f"word problem undecided: {e}")
            return WordProblemOutcome.UNDECIDED_BUDGET, report
        if not letters and segments[0].is_identity():
            return WordProblemOutcome.TRIVIAL, report
        return WordProblemOutcome.NONTRIVIAL, report

    def normal_form(self, word: Word) -> GNormalForm:
        """Canonical form: Britton reduce, then push subgroup parts leftwards."""
        segments, letters, kg = self.reduce(word, kg=self.k_group(word, coset_pushes=True))
        for k in range(len(letters), 0, -1):
            name, e = letters[k - 1]
            family = STABLE_SUBGROUPS[name]
            a, r = kg.split_coset(segments[k], family)
            segments[k] = r
            if not a.is_identity():
                segments[k - 1] = kg.multiply(segments[k - 1], kg.apply_phi(family, a, e))
        return GNormalForm(tuple(segments), tuple(letters))

    def equal(self, u: Word, v: Word) -> bool:
        """Whether u and v are the same element."""
        outcome, _ = self.is_trivial(u * v.star())
        if outcome is WordProblemOutcome.UNDECIDED_BUDGET:
            raise BudgetExhausted(f"could not compare {u} and {v} within budget")
        return outcome is WordProblemOutcome.TRIVIAL

    def tau0(self, p: StarPolynomial | Mapping[Word, Fraction]) -> Fraction:
        """Canonical trace: the total coefficient of words equal to the identity.

        Raises:
            BudgetExhausted: when some word cannot be decided.
        """
        terms = p.terms if isinstance(p, StarPolynomial) else p
        total = Fraction(0)
        for word, c in terms.items():
            outcome, _ = self.is_trivial(word)
            if outcome is WordProblemOutcome.UNDECIDED_BUDGET:
                raise BudgetExhausted(f"tau0 undecided on {word}")
            if outcome is WordProblemOutcome.TRIVIAL:
                total += c
        return total


IDENTITY_G = GNormalForm((IDENTITY,), ())
