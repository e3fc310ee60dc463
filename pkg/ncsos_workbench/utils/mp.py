"""Multi-processing utilities."""

import multiprocessing
from collections.abc import Callable, Iterable
from typing import TypeVar

import tqdm

T = TypeVar("T")
R = TypeVar("R")


def init_mp() -> None:
    """Set start method to preload and configure forkserver preload."""
    multiprocessing.set_start_method("forkserver", force=True)
    multiprocessing.set_forkserver_preload(
        [
            "pickle",
            "fractions",
            "jsonargparse",
            "numpy",
            "scipy.linalg",
            "ncsos_workbench.certificates.states",
            "ncsos_workbench.words.polynomial",
        ]
    )


def map_trials(
    fn: Callable[[T], R], jobs: Iterable[T], workers: int = 0, desc: str = ""
) -> list[R]:
    """Run fn over jobs, in a process pool when workers > 1.

    Results keep the order of jobs so that reports do not depend on scheduling.
    """
    jobs = list(jobs)
    if workers <= 1:
        return [fn(job) for job in tqdm.tqdm(jobs, desc=desc, disable=not desc)]
    with multiprocessing.Pool(workers) as p:
        outputs = p.imap(fn, jobs)
        return list(tqdm.tqdm(outputs, total=len(jobs), desc=desc, disable=not desc))
