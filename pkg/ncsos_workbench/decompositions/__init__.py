"""R-decompositions: exact verification, algebra of decompositions and builders."""

from .chain import ChainBuilder, RewriteRule, make_rule
from .decomposition import (
    DecompositionSize,
    Entry,
    RDecomposition,
    VerificationResult,
    combine,
    compose,
    from_relator_product,
    multiply,
    read_decomposition,
    scale,
    single,
    size,
    verify,
    write_decomposition,
)
from .key_relation import decompose_key_relation, key_target

__all__ = [
    "ChainBuilder",
    "DecompositionSize",
    "Entry",
    "RDecomposition",
    "RewriteRule",
    "VerificationResult",
    "combine",
    "compose",
    "decompose_key_relation",
    "from_relator_product",
    "key_target",
    "make_rule",
    "multiply",
    "read_decomposition",
    "scale",
    "single",
    "size",
    "verify",
    "write_decomposition",
]
