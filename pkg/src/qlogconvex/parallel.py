"""Order-preserving map over a process pool.

The worker count comes from ``QLOGCONVEX_JOBS`` (default: CPU count).
Results are returned in input order, so aggregation downstream is identical
for parallel and sequential runs.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

JOBS_ENV = "QLOGCONVEX_JOBS"


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"{JOBS_ENV} must be a positive integer, got {raw!r}") from None
    return os.cpu_count() or 1


def chunked(items: Sequence[T], size: int) -> List[List[T]]:
    return [list(items[i : i + size]) for i in range(0, len(items), size)]


def ordered_map(fn: Callable[..., R], tasks: Iterable[tuple], parallel: bool = False) -> List[R]:
    """``[fn(*task) for task in tasks]``, optionally spread over processes."""
    tasks = list(tasks)
    jobs = default_jobs() if parallel else 1
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(*task) for task in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(fn, *zip(*tasks)))
