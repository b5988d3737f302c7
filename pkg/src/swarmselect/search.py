"""Pieces shared by the optimizers: evaluation counting, batch evaluation, results."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .objective import binarize

FitnessFn = Callable[[np.ndarray], float]

THREADS_ENV = "SWARMSELECT_THREADS"


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


class CountingFitness:
    """Wraps a fitness function and counts how often it is called."""

    def __init__(self, fn: FitnessFn):
        self.fn = fn
        self.count = 0

    def __call__(self, x: np.ndarray) -> float:
        self.count += 1
        return float(self.fn(x))


def evaluate_all(fitness_fn: FitnessFn, positions: np.ndarray) -> np.ndarray:
    """Fitness of every row, in row order.

    Fans out over ``SWARMSELECT_THREADS`` threads when that is above 1; the
    result does not depend on the thread count.
    """
    workers = worker_count()
    rows = [np.array(p) for p in positions]
    if workers > 1 and len(rows) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(fitness_fn, rows))
    else:
        values = [fitness_fn(p) for p in rows]
    return np.array(values, dtype=float)


@dataclass
class SearchResult:
    """Outcome of one optimizer run on an arbitrary fitness function.

    ``trace[0]`` is the best fitness of the initial population and
    ``trace[t]`` the best-so-far after iteration ``t``.
    """

    algo: str
    best_position: np.ndarray
    best_fitness: float
    trace: list[float]
    evaluations: int = 0
    evaluations_per_iteration: list[int] = field(default_factory=list)
    # hybrid only: (iteration, hho_best, ssa_best) for every accepted refinement
    acceptances: list[tuple[int, float, float]] = field(default_factory=list)

    def best_mask(self, threshold: float = 0.5) -> np.ndarray:
        return binarize(self.best_position, threshold)
