"""Presentation providers for the group H that hosts G.

A provider hands the compilers a finite presentation whose relators all hold in
G, together with the words of H that play the roles of J, X, Z, S, T and W.
``TruncatedProvider`` emits the defining relations of G restricted to a window
of indices, involutionized; a genuine finitely presented H can replace it
behind the same interface.
"""

from __future__ import annotations

from typing import Protocol

from ncsos_workbench.groups.gs import x_word, z_word
from ncsos_workbench.machines.turing import TuringMachine, halting_time, representative
from ncsos_workbench.presentations.presentation import (
    GroupPresentation,
    apply_generator_map,
    free_reduce,
    involutionize,
)
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.word import Word

logger = get_logger(__name__)

G_GENERATORS = ("J", "S", "T", "W", "X", "Z")
G_INVOLUTIONS = ("J", "X", "Z")


def commutator(a: Word, b: Word) -> Word:
    """The group commutator a b a^-1 b^-1."""
    return a * b * a.star() * b.star()


class PresentationProvider(Protocol):
    """Interface used by the reduction compilers."""

    def presentation(self, m_bound: int, i_bound: int) -> GroupPresentation:
        """A presentation whose relators hold in G for the given index window."""

    def designated_words(self) -> dict[str, Word]:
        """Words of H for J, X, Z, S, T, W."""

    def key_relator(self, m: int, n: int) -> Word:
        """The relator J X_mn Z_mn X_mn Z_mn in the letters of H (n below the halting time)."""


class TruncatedProvider:
    """Relations of G with |m| <= m_bound and |i| <= i_bound, involutionized.

    Args:
        tm: the machine defining G.
        halting_budget: steps simulated when deciding whether to emit the
            wrap-around relators for some m.
    """

    def __init__(self, tm: TuringMachine, halting_budget: int = 64) -> None:
        """Create a provider for tm."""
        self.tm = tm
        self.halting_budget = halting_budget
        self._cache: dict[tuple[int, int], GroupPresentation] = {}
        self._mapping = {g: Word.of(g) for g in G_INVOLUTIONS}
        for y in ("S", "T", "W"):
            self._mapping[y] = Word.of(f"s_{y}", f"t_{y}")

    def g_relators(self, m_bound: int, i_bound: int) -> list[Word]:
        """Relators of G over J, S, T, W, X, Z inside the window."""
        if m_bound < 0 or i_bound < 0:
            raise ValueError("bounds must be non-negative")
        J, X, Z = Word.of("J"), Word.of("X"), Word.of("Z")
        relators = [J * J, X * X, Z * Z]
        for g in ("S", "T", "W", "X", "Z"):
            relators.append(commutator(Word.of(g), J))
        ms = range(-m_bound, m_bound + 1)
        indices = range(-i_bound, i_bound + 1)
        for m in ms:
            for i in indices:
                relators.append(self._anticommutation(m, i))
            for i in indices:
                for j in indices:
                    if representative(self.tm, m, i) == representative(self.tm, m, j):
                        continue
                    relators.append(commutator(x_word(m, i), z_word(m, j)))
                    if i < j:
                        relators.append(commutator(x_word(m, i), x_word(m, j)))
                        relators.append(commutator(z_word(m, i), z_word(m, j)))
            if m >= 0:
                h = halting_time(self.tm, m, self.halting_budget)
                if h is not None:
                    relators.append(x_word(m, h + 1) * x_word(m, 0).star())
                    relators.append(z_word(m, h + 1) * z_word(m, 0).star())
        return relators

    def _anticommutation(self, m: int, i: int) -> Word:
        core = x_word(m, i) * z_word(m, i) * x_word(m, i) * z_word(m, i)
        if representative(self.tm, m, i) == -1:
            return core
        return Word.of("J") * core

    def presentation(self, m_bound: int, i_bound: int) -> GroupPresentation:
        """Involutionized truncated presentation (cached per bounds)."""
        key = (m_bound, i_bound)
        if key not in self._cache:
            base = GroupPresentation.build(
                G_GENERATORS, self.g_relators(m_bound, i_bound), G_INVOLUTIONS
            )
            self._cache[key], _ = involutionize(base)
            logger.debug(
                f"truncated presentation for bounds {key}: "
                f"{len(self._cache[key].relators)} relators"
            )
        return self._cache[key]

    def designated_words(self) -> dict[str, Word]:
        """J, X, Z are generators; S, T, W are the words s_y t_y."""
        return dict(self._mapping)

    def to_h(self, word: Word) -> Word:
        """Rewrite a word over J, S, T, W, X, Z in the letters of H."""
        return apply_generator_map(word, self._mapping)

    def key_relator(self, m: int, n: int) -> Word:
        """J X_mn Z_mn X_mn Z_mn in the letters of H."""
        if representative(self.tm, m, n) == -1:
            raise ValueError(f"index {n} at m={m} wraps to -1; the relator carries no J")
        return self.to_h(free_reduce(self._anticommutation(m, n)))


def truncated_GS(m_bound: int, i_bound: int, tm: TuringMachine) -> GroupPresentation:
    """Shorthand for ``TruncatedProvider(tm).presentation(m_bound, i_bound)``."""
    return TruncatedProvider(tm).presentation(m_bound, i_bound)
