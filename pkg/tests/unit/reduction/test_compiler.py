from fractions import Fraction

import pytest

from ncsos_workbench.config import ReductionConfig
from ncsos_workbench.machines.library import halt_immediately
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.reduction.compiler import (
    CompiledAlpha,
    CompiledBeta,
    build_w_m,
    compile_alpha,
    compile_beta,
    ptilde,
    xtilde,
)
from ncsos_workbench.reduction.relations import relations_Rm
from ncsos_workbench.words.word import Word


@pytest.fixture(scope="module")
def alpha() -> CompiledAlpha:
    return compile_alpha(1, halt_immediately())


@pytest.fixture(scope="module")
def beta() -> CompiledBeta:
    return compile_beta(1, halt_immediately())


def test_xtilde_and_ptilde() -> None:
    assert xtilde(0) == Word.of("Xt")
    assert xtilde(2).degree == 9
    assert ptilde(1).degree() == 7
    with pytest.raises(ValueError):
        ptilde(-1)


def test_w_m_contains_defining_relations() -> None:
    relations = relations_Rm(1, TruncatedProvider(halt_immediately()))
    w_m = build_w_m(relations)
    assert w_m.family_sizes()["R6"] == 1
    assert "R0" not in w_m.family_sizes()
    assert w_m.family_sizes()["W"] > len(relations.defining())


def test_alpha(alpha: CompiledAlpha) -> None:
    assert alpha.penalty == ReductionConfig().alpha_penalty(1)
    assert alpha.polynomial.is_self_adjoint()
    assert len(alpha.square_roots) >= len(alpha.w_m)
    assert alpha.polynomial.coefficient(Word()) > 0


def test_beta(beta: CompiledBeta) -> None:
    assert beta.penalty == ReductionConfig().beta_penalty(1)
    assert beta.polynomial.is_self_adjoint()
    assert len(beta.sync) == 15


def test_custom_constants() -> None:
    config = ReductionConfig(Lambda_tilde=Fraction(2), k_prime=1)
    assert compile_alpha(2, halt_immediately(), config).penalty == Fraction(1, 16)
    with pytest.raises(ValueError):
        compile_beta(0, halt_immediately())
