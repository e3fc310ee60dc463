from fractions import Fraction

import pytest

from ncsos_workbench.certificates.halting import (
    BlockRep,
    StateEvaluation,
    eval_state_alpha,
    eval_sync_state_beta,
    expected_tau_pq,
    halting_rep,
    tau_pq,
)
from ncsos_workbench.errors import BudgetExhausted
from ncsos_workbench.machines.library import delay_machine, halt_immediately, loop_forever, resolve_machine
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.reduction.relations import relations_Rm


@pytest.fixture(scope="module")
def rep() -> BlockRep:
    return halting_rep(halt_immediately(), 1)


@pytest.fixture(scope="module")
def alpha(rep: BlockRep) -> StateEvaluation:
    return eval_state_alpha(halt_immediately(), 1, rep=rep)


@pytest.fixture(scope="module")
def beta(rep: BlockRep) -> StateEvaluation:
    return eval_sync_state_beta(halt_immediately(), 1, rep=rep)


def test_expected_tau_pq() -> None:
    assert expected_tau_pq(1) == Fraction(1, 8)
    assert expected_tau_pq(3) == Fraction(1, 64)


def test_tau_pq_halt_immediately(rep: BlockRep) -> None:
    assert rep.n == 1
    assert rep.size == 4
    assert tau_pq(rep) == Fraction(1, 8)


@pytest.mark.parametrize("steps", [2, 3])
def test_tau_pq_delay(steps: int) -> None:
    rep = halting_rep(delay_machine(steps), 1)
    assert rep.n == steps
    assert tau_pq(rep) == expected_tau_pq(steps)


def test_representation_annihilates_relations(rep: BlockRep) -> None:
    tm = halt_immediately()
    rep.verify(relations_Rm(1, TruncatedProvider(tm)))


@pytest.mark.parametrize(
    "machine,m", [("delay:3", 1), ("delay:4", 2), ("delay:5", 1), ("scan_right", 1), ("scan_right", 2)]
)
def test_representation_annihilates_relations_of_longer_runs(machine: str, m: int) -> None:
    tm = resolve_machine(machine)
    halting_rep(tm, m).verify(relations_Rm(m, TruncatedProvider(tm)))


def test_alpha_value(alpha: StateEvaluation) -> None:
    assert alpha.nonzero_squares == 0
    assert alpha.squares > 0
    assert alpha.value == alpha.expected
    assert alpha.value < 0


def test_beta_value(beta: StateEvaluation) -> None:
    assert beta.nonzero_squares == 0
    assert beta.value == beta.expected
    assert beta.value < 0


def test_rejects_non_halting_input() -> None:
    with pytest.raises(BudgetExhausted):
        halting_rep(loop_forever(), 1, budget=20)
    with pytest.raises(ValueError):
        halting_rep(halt_immediately(), 0)
