"""The involutive cover H of G.

For each stable letter y in {S, T, W} an involution t_y is adjoined with
t_y y t_y = y^-1, and s_y := y t_y is then an involution as well, so H is
generated by the involutions J, X, Z, s_y, t_y and contains G with
y = s_y t_y. Elements are handled as alternating G-segments and reflections
t_y: a reflection pair t_y g t_y collapses to g^-1 whenever g is a power of y.
"""

from __future__ import annotations

from dataclasses import dataclass

from ncsos_workbench.groups.gs import (
    IDENTITY_G,
    STABLE_LETTERS,
    GNormalForm,
    GroupGS,
    free_retraction,
    g_letter,
)
from ncsos_workbench.machines.turing import TuringMachine
from ncsos_workbench.words.word import Generator, Word

H_NAMES = ("J", "X", "Z") + tuple(f"{p}_{y}" for y in STABLE_LETTERS for p in ("s", "t"))


def s_letter(y: str) -> Generator:
    """The involution s_y."""
    return Generator(f"s_{y}")


def t_letter(y: str) -> Generator:
    """The involution t_y."""
    return Generator(f"t_{y}")


def involutionize_word(word: Word) -> Word:
    """Rewrite S, T, W (and inverses) as s_y t_y and t_y s_y; other letters are kept.

    Starred copies of the remaining letters are kept so that a group word maps
    to the matching *-monomial.
    """
    letters: list[Generator] = []
    for x in word:
        if x.name in STABLE_LETTERS and not x.indices:
            s, t = s_letter(x.name), t_letter(x.name)
            if x.starred:
                letters.extend([t.star(), s.star()])
            else:
                letters.extend([s, t])
        else:
            letters.append(x)
    return Word(tuple(letters))


def reflection_of(x: Generator) -> str | None:
    """The y of a letter t_y, otherwise None."""
    if x.name.startswith("t_") and x.name[2:] in STABLE_LETTERS and not x.indices:
        return x.name[2:]
    return None


@dataclass(frozen=True)
class CoverNormalForm:
    """g_0 t_{y_1} g_1 ... t_{y_n} g_n with every g_i > 0 a canonical coset representative."""

    segments: tuple[GNormalForm, ...]
    reflections: tuple[str, ...]

    def to_word(self) -> Word:
        """Render over the G letters and the reflections."""
        letters = list(self.segments[0].to_word().letters)
        for y, seg in zip(self.reflections, self.segments[1:]):
            letters.append(t_letter(y))
            letters.extend(seg.to_word().letters)
        return Word(tuple(letters))

    def is_identity(self) -> bool:
        """Whether the element is trivial."""
        return not self.reflections and self.segments[0].is_identity()

    def in_k(self) -> bool:
        """Whether the element lies in K."""
        return not self.reflections and self.segments[0].in_k()

    def __str__(self) -> str:
        """Render in token syntax."""
        return str(self.to_word())


IDENTITY_H = CoverNormalForm((IDENTITY_G,), ())


def _leading_exponent(word: Word, y: str) -> int:
    k = 0
    sign = 0
    for x in word:
        step = -1 if x.starred else 1
        if x.name != y or (sign and step != sign):
            break
        sign = step
        k += step
    return k


class InvolutiveCover:
    """Normal forms in H built on the G solver.

    Args:
        tm: the machine defining G.
        budget: per-representative simulation budget passed to the G solver.
    """

    def __init__(self, tm: TuringMachine, budget: int | None = None) -> None:
        """Create a cover over the group of tm."""
        self.gs = GroupGS(tm, budget)
        self._cache: dict[Word, CoverNormalForm] = {}

    def _g_form(self, letters: list[Generator]) -> GNormalForm:
        return self.gs.normal_form(Word(tuple(letters)))

    def power_of(self, g: GNormalForm, y: str) -> int | None:
        """k with g = y^k in G, or None if g is not a power of y."""
        image = free_retraction(g.to_word())
        if any(x.name != y for x in image):
            return None
        k = sum(-1 if x.starred else 1 for x in image)
        check = g.to_word() * Word.of(y).power(-k)
        return k if self.gs.normal_form(check).is_identity() else None

    def normal_form(self, word: Word) -> CoverNormalForm:
        """Canonical form of a word over the letters of H (G letters also accepted)."""
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        pieces: list[list[Generator]] = [[]]
        reflections: list[str] = []
        for x in word:
            y = reflection_of(x)
            if y is not None:
                reflections.append(y)
                pieces.append([])
            elif x.name.startswith("s_") and x.name[2:] in STABLE_LETTERS:
                y = x.name[2:]
                pieces[-1].append(g_letter(y))
                reflections.append(y)
                pieces.append([])
            else:
                pieces[-1].append(x)
        segments = [self._g_form(piece) for piece in pieces]

        k = 1
        while k < len(segments) - 1:
            y = reflections[k - 1]
            if reflections[k] == y:
                power = self.power_of(segments[k], y)
                if power is not None:
                    merged = (
                        list(segments[k - 1].to_word().letters)
                        + list(Word.of(y).power(-power).letters)
                        + list(segments[k + 1].to_word().letters)
                    )
                    segments[k - 1 : k + 2] = [self._g_form(merged)]
                    del reflections[k - 1 : k + 1]
                    k = max(1, k - 1)
                    continue
            k += 1

        for k in range(len(reflections), 0, -1):
            y = reflections[k - 1]
            lead = _leading_exponent(free_retraction(segments[k].to_word()), y)
            if lead:
                shift = Word.of(y).power(-lead)
                segments[k] = self._g_form(list((shift * segments[k].to_word()).letters))
                segments[k - 1] = self._g_form(
                    list((segments[k - 1].to_word() * shift).letters)
                )
        result = CoverNormalForm(tuple(segments), tuple(reflections))
        self._cache[word] = result
        return result

    def multiply(self, a: CoverNormalForm, b: CoverNormalForm) -> CoverNormalForm:
        """Product of two normal forms."""
        return self.normal_form(a.to_word() * b.to_word())

    def inverse(self, a: CoverNormalForm) -> CoverNormalForm:
        """Inverse of a normal form."""
        return self.normal_form(a.to_word().star())

    def is_trivial(self, word: Word) -> bool:
        """Whether word is the identity of H."""
        return self.normal_form(word).is_identity()
