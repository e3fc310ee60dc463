"""Lifts of free-group embeddings to free *-algebras.

The free group F_N embeds in F_K (K >= 2), in Z_3^{*K} (K >= 2) and in
Z_2^{*K} (K >= 3). Each embedding has a lift to a *-homomorphism between the
free *-algebras on x1..xN and x1..xK commuting with the quotient maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ncsos_workbench.presentations.presentation import free_reduce
from ncsos_workbench.words.polynomial import StarPolynomial, involutive_reduce
from ncsos_workbench.words.word import Generator, Word


class EmbeddingTarget(Enum):
    """Target group of an embedding."""

    FREE = "free"
    Z3 = "z3"
    Z2 = "z2"


MINIMUM_RANK = {EmbeddingTarget.FREE: 2, EmbeddingTarget.Z3: 2, EmbeddingTarget.Z2: 3}


def generator(k: int) -> Word:
    """The one-letter word x<k>."""
    return Word.of(f"x{k}")


@dataclass(frozen=True)
class FreeEmbedding:
    """Images of x1..xN as monomials over x1..xK."""

    target: EmbeddingTarget
    rank: int
    images: dict[str, Word]

    def image_of_word(self, word: Word) -> Word:
        """Apply the lift to a monomial."""
        letters: list[Generator] = []
        for x in word:
            image = self.images[x.name]
            letters.extend((image.star() if x.starred else image).letters)
        return Word(tuple(letters))

    def __call__(self, p: StarPolynomial) -> StarPolynomial:
        """Apply the unital *-homomorphism to a polynomial."""
        return p.map_words(self.image_of_word)


def embed_free(n: int, target: EmbeddingTarget | str, rank: int | None = None) -> FreeEmbedding:
    """The lift of F_N -> target group of the given rank (default the minimum).

    Images: x_i -> x1^i x2 (x1*)^i for F_K, (x1 x2*)^i x1* x2 (x2 x1*)^i for
    Z_3^{*K} and (x2 x3)^i (x1 x2 x3 x1) (x3* x2*)^i for Z_2^{*K}.
    """
    target = EmbeddingTarget(target)
    rank = MINIMUM_RANK[target] if rank is None else rank
    if rank < MINIMUM_RANK[target]:
        raise ValueError(
            f"{target.value} target needs rank >= {MINIMUM_RANK[target]}, got {rank}"
        )
    if n < 1:
        raise ValueError(f"need at least one source generator, got {n}")
    x1, x2, x3 = generator(1), generator(2), generator(3)
    images = {}
    for i in range(1, n + 1):
        if target is EmbeddingTarget.FREE:
            shift = x1.power(i)
            core = x2
        elif target is EmbeddingTarget.Z3:
            shift = (x1 * x2.star()).power(i)
            core = x1.star() * x2
        else:
            shift = (x2 * x3).power(i)
            core = x1 * x2 * x3 * x1
        images[f"x{i}"] = shift * core * shift.star()
    return FreeEmbedding(target, rank, images)


def _z3_reduce(word: Word) -> Word:
    # exponents mod 3; x* is x^-1 = x^2
    stack: list[tuple[str, int]] = []
    for x in word:
        e = 2 if x.starred else 1
        if stack and stack[-1][0] == x.name:
            name, prev = stack.pop()
            e = (prev + e) % 3
            if e:
                stack.append((name, e))
        else:
            stack.append((x.name, e))
    return Word(tuple(Generator(name, e == 2) for name, e in stack))


def reduce_in(target: EmbeddingTarget | str, word: Word) -> Word:
    """Normal form of a monomial in F_K, Z_3^{*K} or Z_2^{*K}."""
    target = EmbeddingTarget(target)
    if target is EmbeddingTarget.FREE:
        return free_reduce(word)
    if target is EmbeddingTarget.Z3:
        return _z3_reduce(word)
    return involutive_reduce(word)
