"""Finite group presentations, involutionization and the presentation file format.

Group inverses are starred letters, so a relator word doubles as the
*-monomial it maps to in the group algebra.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

from ncsos_workbench.errors import ParseError
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.word import Generator, Word, parse_token

logger = get_logger(__name__)

SECTIONS = ("gens", "rels", "involutions")


def free_reduce(word: Word) -> Word:
    """Cancel adjacent x x~ and x~ x pairs."""
    stack: list[Generator] = []
    for x in word:
        if stack and stack[-1] == x.star():
            stack.pop()
        else:
            stack.append(x)
    return Word(tuple(stack))


def square(name: str) -> Word:
    """The relator g g."""
    return Word.of(name, name)


@dataclass(frozen=True)
class GroupPresentation:
    """Generators, freely reduced relators and the set of involutive generators."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    involutions: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        """Check relators only use declared generators and involution flags are backed by g² relators."""
        names = set(self.generators)
        if len(names) != len(self.generators):
            raise ValueError("duplicate generator names")
        if not self.involutions <= names:
            raise ValueError(f"undeclared involutions {sorted(self.involutions - names)}")
        for r in self.relators:
            stray = {x.name for x in r} - names
            if stray:
                raise ValueError(f"relator {r} uses undeclared generators {sorted(stray)}")
            if free_reduce(r) != r:
                raise ValueError(f"relator {r} is not freely reduced")
        present = set(self.relators)
        for g in self.involutions:
            if square(g) not in present:
                raise ValueError(f"involution {g} has no relator {g} {g}")

    @classmethod
    def build(
        cls,
        generators: Iterable[str],
        relators: Iterable[Word],
        involutions: Iterable[str] = (),
    ) -> GroupPresentation:
        """Freely reduce, drop empty and duplicate relators, add g² for involutions."""
        involutions = frozenset(involutions)
        seen: dict[Word, None] = {}
        for g in sorted(involutions):
            seen[square(g)] = None
        for r in relators:
            reduced = free_reduce(r)
            if reduced.letters:
                seen[reduced] = None
        return cls(tuple(generators), tuple(seen), involutions)

    def letter(self, name: str) -> Generator:
        """Look up a generator by name."""
        if name not in self.generators:
            raise ValueError(f"{name} is not a generator")
        return Generator(name)


def involutionize(
    presentation: GroupPresentation,
) -> tuple[GroupPresentation, dict[str, Word]]:
    """Replace each non-involutive generator y by s_y t_y with s_y, t_y involutions.

    Returns the new presentation and the generator map y -> s_y t_y (involutive
    generators map to themselves). The map embeds the original group and at most
    doubles word lengths.
    """
    mapping: dict[str, Word] = {}
    generators: list[str] = []
    for y in presentation.generators:
        if y in presentation.involutions:
            mapping[y] = Word.of(y)
            generators.append(y)
        else:
            mapping[y] = Word.of(f"s_{y}", f"t_{y}")
            generators.extend([f"s_{y}", f"t_{y}"])
    relators = [apply_generator_map(r, mapping) for r in presentation.relators]
    return GroupPresentation.build(generators, relators, generators), mapping


def apply_generator_map(word: Word, mapping: dict[str, Word]) -> Word:
    """Substitute words for generators; starred letters get the starred image."""
    letters: list[Generator] = []
    for x in word:
        image = mapping.get(x.name)
        if image is None or x.indices:
            letters.append(x)
        else:
            letters.extend((image.star() if x.starred else image).letters)
    return Word(tuple(letters))


def parse_presentation(text: str) -> GroupPresentation:
    """Parse the ``[gens]``/``[rels]``/``[involutions]`` format."""
    sections: dict[str, list[tuple[str, str]]] = {key: [] for key in SECTIONS}
    current: str | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in SECTIONS:
                raise ParseError(f"unknown section [{current}]", raw, raw.index("[") + 1)
            continue
        if current is None:
            raise ParseError("content before the first section header", raw, 0)
        sections[current].append((raw, line))

    generators = [line for _, line in sections["gens"]]
    for raw, line in sections["gens"]:
        if " " in line:
            raise ParseError("one generator per line", raw, raw.index(" "))
    relators = []
    for raw, line in sections["rels"]:
        letters = []
        pos = 0
        for tok in line.split():
            pos = raw.index(tok, pos)
            letters.append(parse_token(tok, pos, raw))
            pos += len(tok)
        relators.append(Word(tuple(letters)))
    involutions = [tok for _, line in sections["involutions"] for tok in line.split()]
    try:
        return GroupPresentation.build(generators, relators, involutions)
    except ValueError as e:
        raise ParseError(str(e), text.strip().splitlines()[0] if text.strip() else "", 0) from e


def format_presentation(presentation: GroupPresentation) -> str:
    """Render in the sectioned file format."""
    lines = ["[gens]", *presentation.generators, "[rels]"]
    lines.extend(str(r) for r in presentation.relators)
    lines.append("[involutions]")
    if presentation.involutions:
        lines.append(" ".join(sorted(presentation.involutions)))
    return "\n".join(lines) + "\n"


def load_presentation(path: str | Path) -> GroupPresentation:
    """Read a presentation file."""
    path = Path(path)
    logger.debug(f"loading presentation from {path}")
    return parse_presentation(path.read_text())
