"""Normal forms for the amalgamated product K of the groups K(m) over <J>.

Letters are ``J``, ``x[m,i]`` and ``z[m,i]``; every letter is an involution so a
starred letter denotes the same element. J is central. Inside K(m), letters with
different second index commute, and x[m,i] z[m,i] = J z[m,i] x[m,i] unless
i = -1 (then they commute). Different m do not interact except through J.

Indices must already be representatives of Z_{h(m)+1}; ``KGroup.rep`` computes
them by bounded simulation of the machine.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

from ncsos_workbench.errors import NonRepresentativeIndex
from ncsos_workbench.machines.turing import TuringMachine, representative
from ncsos_workbench.words.word import Generator, Word

J_LETTER = Generator("J")
K_NAMES = ("x", "z")
TAG_BITS = 3
DELIMITER_BITS = 2


def x_letter(m: int, i: int) -> Generator:
    """The generator x_{m,i}."""
    return Generator("x", False, (m, i))


def z_letter(m: int, i: int) -> Generator:
    """The generator z_{m,i}."""
    return Generator("z", False, (m, i))


@dataclass(frozen=True)
class KCell:
    """The factor x_{m,i}^a z_{m,i}^b of a block; (a, b) is never (0, 0)."""

    i: int
    a: int
    b: int


@dataclass(frozen=True)
class KBlock:
    """A nontrivial coset representative of <J> in K(m), cells sorted by index."""

    m: int
    cells: tuple[KCell, ...]

    def letters(self) -> list[Generator]:
        """Letters of the block in normal-form order."""
        out = []
        for cell in self.cells:
            if cell.a:
                out.append(x_letter(self.m, cell.i))
            if cell.b:
                out.append(z_letter(self.m, cell.i))
        return out

    def x_part(self) -> KBlock | None:
        """Product of the x letters (the block equals x_part times z_part exactly)."""
        cells = tuple(KCell(c.i, 1, 0) for c in self.cells if c.a)
        return KBlock(self.m, cells) if cells else None

    def z_part(self) -> KBlock | None:
        """Product of the z letters."""
        cells = tuple(KCell(c.i, 0, 1) for c in self.cells if c.b)
        return KBlock(self.m, cells) if cells else None

    def split_index_zero(self) -> tuple[KBlock | None, KBlock | None]:
        """Return (cell at index 0, remaining cells); they commute."""
        zero = tuple(c for c in self.cells if c.i == 0)
        rest = tuple(c for c in self.cells if c.i != 0)
        return (
            KBlock(self.m, zero) if zero else None,
            KBlock(self.m, rest) if rest else None,
        )


@dataclass(frozen=True)
class KNormalForm:
    """J^j w_1 ... w_l with consecutive blocks at different m."""

    j: int
    blocks: tuple[KBlock, ...]

    def to_word(self) -> Word:
        """Render as a word over J, x, z."""
        letters = [J_LETTER] if self.j else []
        for block in self.blocks:
            letters.extend(block.letters())
        return Word(tuple(letters))

    def non_j_word(self) -> Word:
        """The word w_1 ... w_l without the J prefix."""
        letters: list[Generator] = []
        for block in self.blocks:
            letters.extend(block.letters())
        return Word(tuple(letters))

    def is_identity(self) -> bool:
        """Whether the element is trivial."""
        return self.j == 0 and not self.blocks

    def __str__(self) -> str:
        """Render in token syntax."""
        return str(self.to_word())


IDENTITY = KNormalForm(0, ())


class Subgroup(Enum):
    """The three subgroups on which the stable letters act."""

    X = "x-subgroup"
    Z = "z-subgroup"
    ZERO = "zero-subgroup"


class KGroup:
    """Normal forms in K for a fixed machine.

    Args:
        tm: the machine defining h(m).
        budget: optional cap on the simulation steps of a single representative
            computation; exceeding it raises BudgetExhausted.
    """

    def __init__(self, tm: TuringMachine, budget: int | None = None) -> None:
        """Create a normal form engine bound to tm."""
        self.tm = tm
        self.budget = budget
        self._reps: dict[tuple[int, int], int] = {}

    def rep(self, m: int, i: int) -> int:
        """Representative of i in Z_{h(m)+1}."""
        key = (m, i)
        if key not in self._reps:
            self._reps[key] = representative(self.tm, m, i, self.budget)
        return self._reps[key]

    def commutes(self, m: int, i: int) -> bool:
        """Whether x_{m,i} and z_{m,i} commute (i + 1 = 0 in Z_{h(m)+1})."""
        return i == -1

    def canonical_letter(self, x: Generator) -> Generator:
        """Replace the index of a K letter by its representative."""
        if not x.indices:
            return x.plain()
        return Generator(x.name, False, (x.m, self.rep(x.m, x.i)))

    def _check_letter(self, x: Generator) -> None:
        if x.name == "J" and not x.indices:
            return
        if x.name not in K_NAMES or not x.indices:
            raise ValueError(f"{x} is not a letter of K")
        if self.rep(x.m, x.i) != x.i:
            raise NonRepresentativeIndex(
                f"index {x.i} of {x} is not a representative for m={x.m}; "
                f"use representative() first (it is {self.rep(x.m, x.i)})"
            )

    def eta(self, word: Word | Iterable[Generator]) -> KNormalForm:
        """Normal form of a word over J, x, z with representative indices."""
        j = 0
        # each stack entry: (m, {i: [a, b]})
        stack: list[tuple[int, dict[int, list[int]]]] = []
        for x in word:
            self._check_letter(x)
            if x.name == "J":
                j ^= 1
                continue
            if not stack or stack[-1][0] != x.m:
                stack.append((x.m, {}))
            cells = stack[-1][1]
            cell = cells.setdefault(x.i, [0, 0])
            if x.name == "x":
                if cell[1] and not self.commutes(x.m, x.i):
                    j ^= 1
                cell[0] ^= 1
            else:
                cell[1] ^= 1
            if cell == [0, 0]:
                del cells[x.i]
            if not cells:
                stack.pop()
        blocks = tuple(
            KBlock(m, tuple(KCell(i, a, b) for i, (a, b) in sorted(cells.items())))
            for m, cells in stack
        )
        return KNormalForm(j, blocks)

    def eta_m(self, word: Word) -> KNormalForm:
        """Normal form in K(m); every letter must share the same first index."""
        ms = {x.m for x in word if x.indices}
        if len(ms) > 1:
            raise ValueError(f"eta_m needs a single m, got {sorted(ms)}")
        return self.eta(word)

    def multiply(self, *elements: KNormalForm) -> KNormalForm:
        """Product of normal forms."""
        letters: list[Generator] = []
        for e in elements:
            letters.extend(e.to_word().letters)
        return self.eta(letters)

    def inverse(self, element: KNormalForm) -> KNormalForm:
        """Inverse of a normal form (letters reversed; all are involutions)."""
        return self.eta(element.to_word().reverse())

    def membership(self, element: KNormalForm, family: Subgroup) -> bool:
        """Whether a normal form lies in the x-, z- or index-zero subgroup."""
        for block in element.blocks:
            for cell in block.cells:
                if family is Subgroup.X and cell.b:
                    return False
                if family is Subgroup.Z and cell.a:
                    return False
                if family is Subgroup.ZERO and cell.i != 0:
                    return False
        return True

    def member(self, word: Word, family: Subgroup) -> KNormalForm | None:
        """eta(word) when it lies in the subgroup, otherwise None."""
        nf = self.eta(word)
        return nf if self.membership(nf, family) else None

    def apply_phi(self, family: Subgroup, element: KNormalForm, exponent: int) -> KNormalForm:
        """Apply phi_S, phi_T or phi_W (to the power exponent) to a subgroup element.

        phi_S shifts x indices, phi_T shifts z indices, phi_W shifts m on index-zero letters.
        """
        if exponent not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {exponent}")
        if not self.membership(element, family):
            raise ValueError(f"{element} is not in the {family.value}")
        letters = [J_LETTER] if element.j else []
        for block in element.blocks:
            for x in block.letters():
                if family is Subgroup.ZERO:
                    letters.append(Generator(x.name, False, (x.m + exponent, 0)))
                else:
                    letters.append(Generator(x.name, False, (x.m, self.rep(x.m, x.i + exponent))))
        return self.eta(letters)

    def coset_representative(self, element: KNormalForm, family: Subgroup) -> KNormalForm:
        """Canonical representative of the right coset A·element for A = family."""
        blocks = list(element.blocks)
        while blocks:
            head = blocks[0]
            if family is Subgroup.X:
                remainder = head.z_part()
            elif family is Subgroup.Z:
                remainder = head.x_part()
            else:
                remainder = head.split_index_zero()[1]
            if remainder is None:
                blocks.pop(0)
                continue
            letters = remainder.letters()
            for block in blocks[1:]:
                letters.extend(block.letters())
            return self.eta(letters)
        return IDENTITY

    def split_coset(
        self, element: KNormalForm, family: Subgroup
    ) -> tuple[KNormalForm, KNormalForm]:
        """Write element = a · r with a in the subgroup and r the coset representative."""
        r = self.coset_representative(element, family)
        a = self.multiply(element, self.inverse(r))
        assert self.membership(a, family), f"coset split left {a} outside {family}"
        return a, r


def bit_length_of_index(value: int) -> int:
    """Sign bit, binary magnitude and a delimiter."""
    return 1 + max(1, abs(value).bit_length()) + DELIMITER_BITS


def word_metrics(word: Word, tag_bits: int = TAG_BITS) -> tuple[int, int, int]:
    """(length, bit length, maximum index) of a word.

    Each letter is a fixed-width tag (inverses have their own tag) followed by
    its indices. Exponents are written by repetition.
    """
    bits = 0
    max_index = 0
    for x in word:
        bits += tag_bits
        for value in x.indices:
            bits += bit_length_of_index(value)
        if x.indices:
            max_index = max(max_index, abs(x.i))
    return len(word), bits, max_index
