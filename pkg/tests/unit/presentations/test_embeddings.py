import itertools

import pytest

from ncsos_workbench.presentations.embeddings import EmbeddingTarget, embed_free, reduce_in
from ncsos_workbench.presentations.presentation import free_reduce
from ncsos_workbench.words.polynomial import StarPolynomial
from ncsos_workbench.words.word import Generator, Word

LETTERS = [Generator("x1"), Generator("x1", True), Generator("x2"), Generator("x2", True)]


def _reduced_words(max_length: int) -> list[Word]:
    out = []
    for n in range(1, max_length + 1):
        for letters in itertools.product(LETTERS, repeat=n):
            w = Word(letters)
            if free_reduce(w) == w:
                out.append(w)
    return out


@pytest.mark.parametrize("target", list(EmbeddingTarget))
def test_reduced_words_stay_nontrivial(target: EmbeddingTarget) -> None:
    embedding = embed_free(2, target)
    for w in _reduced_words(3):
        assert reduce_in(target, embedding.image_of_word(w)) != Word(), str(w)


@pytest.mark.parametrize("target", ["free", "z3", "z2"])
def test_lift_is_star_homomorphism(target: str) -> None:
    embedding = embed_free(2, target)
    p = StarPolynomial.letter("x1") * StarPolynomial.letter("x2", starred=True) + 1
    assert embedding(p.star()) == embedding(p).star()
    assert embedding(p * p) == embedding(p) * embedding(p)


def test_rank_checks() -> None:
    with pytest.raises(ValueError):
        embed_free(2, "z2", rank=2)
    with pytest.raises(ValueError):
        embed_free(0, "free")
