"""The groups K and G of a machine, the involutive cover H and its group ring."""

from .cover import CoverNormalForm, InvolutiveCover, involutionize_word
from .group_ring import GroupRing, GroupRingElement
from .gs import (
    GNormalForm,
    GroupGS,
    PinchReport,
    WordProblemOutcome,
    expand_macros,
    free_retraction,
    x_word,
    z_word,
)
from .ks import KGroup, KNormalForm, Subgroup, word_metrics

__all__ = [
    "CoverNormalForm",
    "GNormalForm",
    "GroupGS",
    "GroupRing",
    "GroupRingElement",
    "InvolutiveCover",
    "KGroup",
    "KNormalForm",
    "PinchReport",
    "Subgroup",
    "WordProblemOutcome",
    "expand_macros",
    "free_retraction",
    "involutionize_word",
    "word_metrics",
    "x_word",
    "z_word",
]
