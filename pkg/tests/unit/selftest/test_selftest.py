import pytest

from ncsos_workbench.selftest import SUITES, run_selftest, scaled, selftest_table
from ncsos_workbench.selftest.checks import count_check
from ncsos_workbench.selftest.groups import britton_suite, normalform_suite, normalform_trial
from ncsos_workbench.selftest.numeric import (
    certificates_suite,
    decomposition_suite,
    inequalities_suite,
    sign_round_trial,
)


@pytest.mark.parametrize("trials,fraction,expected", [(1000, 1.0, 1000), (1000, 0.01, 10), (5, 0.01, 1)])
def test_scaled(trials: int, fraction: float, expected: int) -> None:
    assert scaled(trials, fraction) == expected


def test_scaled_rejects_zero() -> None:
    with pytest.raises(ValueError):
        scaled(10, 0)


def test_count_check() -> None:
    assert count_check("s", "n", "m", 3, 3).passed
    failed = count_check("s", "n", "m", 2, 3)
    assert not failed.passed
    assert failed.value == "2/3"


def test_unknown_suite() -> None:
    with pytest.raises(ValueError):
        run_selftest("nope")


def test_normalform_suite_small() -> None:
    checks = normalform_suite(seed=0, trials=20)
    assert [c.name for c in checks] == ["relator-insertion", "idempotence", "metrics", "abelianization"]
    assert all(c.passed for c in checks)


def test_normalform_trial_is_seeded() -> None:
    assert normalform_trial((4, 7, "delay:3")) == normalform_trial((4, 7, "delay:3"))


@pytest.mark.parametrize("trial", range(10))
def test_sign_round_trial(trial: int) -> None:
    assert sign_round_trial((0, trial))


def test_table_has_a_row_per_check() -> None:
    checks = run_selftest("normalform", seed=2, fraction=0.001)
    table = selftest_table(checks, 2)
    assert table.row_count == len(checks) == 4
    assert table.caption == "seed = 2"


def test_suite_names() -> None:
    assert list(SUITES) == ["normalform", "britton", "inequalities", "certificates", "decomposition"]


def test_britton_suite_small() -> None:
    checks = britton_suite(seed=0, fraction=0.01)
    assert checks
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_inequalities_suite_small() -> None:
    checks = inequalities_suite(seed=0, fraction=0.05)
    assert len(checks) == 7
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_certificates_suite_small() -> None:
    checks = certificates_suite(seed=0, fraction=0.1)
    assert [c.name for c in checks] == ["sign-round", "2+2x", "p*p", "motzkin", "coset-expectation"]
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_decomposition_suite_small() -> None:
    checks = decomposition_suite(seed=0, fraction=0.25)
    assert [c.name for c in checks] == ["key-relation", "size-growth"]
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]
