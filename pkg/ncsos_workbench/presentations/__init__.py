"""Group presentations, providers for H, embeddings and coset expectations."""

from .embeddings import EmbeddingTarget, FreeEmbedding, embed_free, reduce_in
from .expectation import coset_expectation
from .presentation import (
    GroupPresentation,
    format_presentation,
    free_reduce,
    involutionize,
    load_presentation,
    parse_presentation,
)
from .provider import PresentationProvider, TruncatedProvider, truncated_GS

__all__ = [
    "EmbeddingTarget",
    "FreeEmbedding",
    "GroupPresentation",
    "PresentationProvider",
    "TruncatedProvider",
    "coset_expectation",
    "embed_free",
    "format_presentation",
    "free_reduce",
    "involutionize",
    "load_presentation",
    "parse_presentation",
    "reduce_in",
    "truncated_GS",
]
