"""Property suites run by ``ncsos selftest``.

Every suite takes a seed and returns a list of ``Check`` rows; the rows are
rendered as one rich table. Trial counts default to the full acceptance sizes
and can be scaled down with ``fraction`` for quick runs.
"""

from collections.abc import Callable

from rich.console import Console
from rich.table import Table

from ncsos_workbench.utils.logging import get_logger

from .checks import Check, scaled
from .groups import britton_suite, normalform_suite
from .numeric import certificates_suite, decomposition_suite, inequalities_suite

logger = get_logger(__name__)

SUITES: dict[str, Callable[..., list[Check]]] = {
    "normalform": normalform_suite,
    "britton": britton_suite,
    "inequalities": inequalities_suite,
    "certificates": certificates_suite,
    "decomposition": decomposition_suite,
}


def run_selftest(
    suite: str = "all", seed: int = 0, workers: int = 0, fraction: float = 1.0
) -> list[Check]:
    """Run one suite, or all of them in a fixed order.

    Raises:
        ValueError: for an unknown suite name.
    """
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES) + ['all']}")
    checks: list[Check] = []
    for name in names:
        logger.info(f"running suite {name} with seed={seed}")
        checks.extend(SUITES[name](seed=seed, workers=workers, fraction=fraction))
    failed = [c for c in checks if not c.passed]
    if failed:
        logger.warning(f"{len(failed)} of {len(checks)} checks failed")
    return checks


def selftest_table(checks: list[Check], seed: int) -> Table:
    """Render checks as a table; the seed goes in the caption."""
    table = Table(caption=f"seed = {seed}")
    table.add_column("Check name", justify="right", style="cyan")
    table.add_column("Metric", style="magenta")
    table.add_column("Value", justify="right", style="green")
    table.add_column("Status")
    for c in checks:
        table.add_row(f"{c.suite}:{c.name}", c.metric, c.value, "ok" if c.passed else "FAILED")
    return table


def print_selftest(checks: list[Check], seed: int) -> None:
    """Print the table to the console."""
    Console().print(selftest_table(checks, seed))


__all__ = [
    "SUITES",
    "Check",
    "print_selftest",
    "run_selftest",
    "scaled",
    "selftest_table",
]
