"""Result rows shared by the suites."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    """One row of a suite report."""

    suite: str
    name: str
    metric: str
    value: str
    passed: bool


def scaled(trials: int, fraction: float) -> int:
    """Trial count after scaling, at least one."""
    if fraction <= 0:
        raise ValueError(f"fraction must be positive, got {fraction}")
    return max(1, int(trials * fraction))


def count_check(suite: str, name: str, metric: str, ok: int, total: int) -> Check:
    """A check passing when every one of ``total`` trials was ok."""
    return Check(suite, name, metric, f"{ok}/{total}", ok == total)
