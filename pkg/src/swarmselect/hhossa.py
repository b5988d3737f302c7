"""HHO with a Salp Swarm refinement after every outer iteration.

Each outer iteration moves all hawks once, then runs a short SSA seeded
with a copy of the hawks (best hawk first, so it leads the chain).  When
the SSA food source beats the current rabbit, it becomes the rabbit and
overwrites the worst hawk, which puts it in the pool that future
random-hawk picks draw from.  The inner search shares the outer
:class:`RandomSource`, so one seed fixes the whole run.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass

import numpy as np

from .dataset import TabularDataset
from .hho import HawkPopulation, hho_step
from .objective import WrapperFitness
from .results import RunResult, finalize
from .rng import RandomSource
from .search import CountingFitness, FitnessFn, SearchResult
from .ssa import SalpChain, run_chain


@dataclass(frozen=True)
class HybridConfig:
    population: int = 30
    hho_iterations: int = 100
    ssa_iterations: int = 20
    beta: float = 1.5
    lb: float = 0.0
    ub: float = 1.0
    a: float = 0.9
    b: float = 0.1
    threshold: float = 0.5
    k: int = 5
    seed: int = 0

    def validate(self) -> None:
        if self.population < 1:
            raise ValueError("population must be >= 1")
        if self.hho_iterations < 0 or self.ssa_iterations < 0:
            raise ValueError("iteration counts must be >= 0")
        if not self.lb < self.ub:
            raise ValueError("lb must be below ub")
        if not 0.0 < self.beta <= 2.0:
            raise ValueError("beta must lie in (0, 2]")


def hybrid_refine(
    pop: HawkPopulation, ssa_iters: int, fitness_fn: FitnessFn, rng: RandomSource
) -> tuple[np.ndarray, float]:
    """Run SSA from a best-first copy of the hawks; ``pop`` is left untouched.

    The hawks' cached fitness values seed the chain, so initialising it costs
    no evaluations.
    """
    order = np.argsort(pop.fitness, kind="stable")
    chain = SalpChain.from_positions(
        pop.positions[order], fitness_fn, pop.lb, pop.ub, fitness=pop.fitness[order]
    )
    run_chain(chain, ssa_iters, fitness_fn, rng)
    return chain.food.copy(), chain.food_fitness


def hhossa_search(
    config: HybridConfig, dim: int, fitness_fn: FitnessFn, rng: RandomSource
) -> SearchResult:
    config.validate()
    counted = CountingFitness(fitness_fn)
    pop = HawkPopulation.random(config.population, dim, counted, rng, config.lb, config.ub)
    trace = [pop.rabbit_fitness]
    per_iter = [counted.count]
    acceptances = []
    for t in range(config.hho_iterations):
        before = counted.count
        hho_step(pop, t, config.hho_iterations, counted, rng, config.beta)
        best, best_fitness = hybrid_refine(pop, config.ssa_iterations, counted, rng)
        if best_fitness < pop.rabbit_fitness:
            acceptances.append((t + 1, pop.rabbit_fitness, best_fitness))
            pop.rabbit = best.copy()
            pop.rabbit_fitness = best_fitness
            worst = int(np.argmax(pop.fitness))
            pop.positions[worst] = best
            pop.fitness[worst] = best_fitness
        trace.append(pop.rabbit_fitness)
        per_iter.append(counted.count - before)
    return SearchResult("hhossa", pop.rabbit.copy(), pop.rabbit_fitness, trace,
                        counted.count, per_iter, acceptances)


def hhossa_run(
    config: HybridConfig,
    train: TabularDataset,
    validation: TabularDataset,
    test: TabularDataset,
    rng: RandomSource,
    full_train: TabularDataset | None = None,
    positive_class: int = 1,
) -> RunResult:
    """Feature selection on ``train``/``validation``, then a held-out test score.

    The final classifier is fit on ``full_train`` (defaults to ``train``)
    restricted to the selected columns.
    """
    fitness = WrapperFitness(train, validation, config.k, config.a, config.b, config.threshold)
    start = time.perf_counter()
    search = hhossa_search(config, train.n_features, fitness, rng)
    elapsed = time.perf_counter() - start
    return finalize(
        search, config.seed, full_train if full_train is not None else train, test,
        config.k, config.threshold, positive_class, elapsed, asdict(config),
    )
