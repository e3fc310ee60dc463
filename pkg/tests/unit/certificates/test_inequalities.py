import pytest

from ncsos_workbench.certificates.inequalities import (
    PROPERTIES,
    calibration_report,
    run_inequality_suite,
    run_trial,
)
from ncsos_workbench.machines.library import halt_immediately, loop_forever


def test_decomposition_bounds_hold() -> None:
    summaries = run_inequality_suite(seed=1, trials=4, max_dim=3, properties=["a", "e"])
    assert [s.prop for s in summaries] == ["a", "e"]
    for s in summaries:
        assert s.trials == 4
        assert s.passed


@pytest.mark.parametrize("prop", sorted(PROPERTIES))
def test_trials_are_reproducible(prop: str) -> None:
    first = run_trial((5, prop, 2, 4))
    second = run_trial((5, prop, 2, 4))
    assert first == second
    assert 2 <= first.dim <= 4


def test_suite_rejects_bad_arguments() -> None:
    with pytest.raises(ValueError):
        run_inequality_suite(properties=["z"])
    with pytest.raises(ValueError):
        run_inequality_suite(max_dim=1)


def test_calibration_needs_running_machine() -> None:
    with pytest.raises(ValueError):
        calibration_report(halt_immediately(), 1)


def test_calibration_report() -> None:
    findings = calibration_report(loop_forever(), 1, scales=(1e-3,), horizon=16)
    assert len(findings) == 1
    (finding,) = findings
    assert finding.scale == 1e-3
    assert finding.epsilon > 0
    assert finding.bound > 0
    again = calibration_report(loop_forever(), 1, scales=(1e-3,), horizon=16)
    assert again == findings
