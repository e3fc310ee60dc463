from fractions import Fraction

import pytest

from ncsos_workbench.decompositions.decomposition import size, verify
from ncsos_workbench.decompositions.key_relation import (
    _r6_part,
    decompose_key_relation,
    key_target,
    size_exponent,
)
from ncsos_workbench.machines.library import delay_machine, halt_immediately, loop_forever
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.reduction.relations import relations_Rm
from ncsos_workbench.words.polynomial import quotient_involutive


@pytest.mark.parametrize(("m", "n"), [(1, 0), (1, 1), (2, 0)])
def test_key_relation_verifies(m: int, n: int) -> None:
    d = decompose_key_relation(m, n, loop_forever())
    assert verify(d)
    assert quotient_involutive(d.target) == quotient_involutive(key_target(n))
    assert size(d).value > 0


def test_key_relation_before_halting() -> None:
    assert verify(decompose_key_relation(1, 1, delay_machine(3)))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_r6_part_size(n: int) -> None:
    relations = relations_Rm(1, TruncatedProvider(loop_forever()), max(1, n))
    d = _r6_part(relations, n)
    assert len(d) == 4
    assert verify(d)
    assert size(d).value == 12 * n + 4


def test_rejects_steps_after_halting() -> None:
    with pytest.raises(ValueError):
        decompose_key_relation(1, 1, halt_immediately())
    with pytest.raises(ValueError):
        decompose_key_relation(0, 0, loop_forever())


def test_size_exponent() -> None:
    points = [(x, Fraction(5 * x**3)) for x in (1, 2, 4, 8)]
    assert size_exponent(points) == pytest.approx(3.0)
    assert size_exponent([(3, Fraction(7))]) == 0.0
