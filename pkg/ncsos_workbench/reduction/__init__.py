"""Relation sets of A(m), rounding relations and the compiled reductions."""

from .compiler import CompiledAlpha, CompiledBeta, compile_alpha, compile_beta, ptilde, xtilde
from .relations import (
    Relation,
    RelationSet,
    format_relations,
    load_relations,
    parse_relations,
    relations_Rm,
    write_relations,
)
from .wmap import sync_terms, tensor_wmap, wmap

__all__ = [
    "CompiledAlpha",
    "CompiledBeta",
    "Relation",
    "RelationSet",
    "compile_alpha",
    "compile_beta",
    "format_relations",
    "load_relations",
    "parse_relations",
    "ptilde",
    "relations_Rm",
    "sync_terms",
    "tensor_wmap",
    "wmap",
    "write_relations",
    "xtilde",
]
