"""Salp Swarm Algorithm over the box [lb, ub]^D (minimisation).

Salp 0 leads and moves around the food source; every later salp moves to
the midpoint between itself and its (already moved) predecessor.  Leader
draws per step: D values of ``r2``, then D values of ``r3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .objective import clamp
from .rng import RandomSource
from .search import CountingFitness, FitnessFn, SearchResult, evaluate_all


@dataclass
class SalpChain:
    salps: np.ndarray  # (N, D); row 0 is the leader
    fitness: np.ndarray
    food: np.ndarray
    food_fitness: float
    lb: float = 0.0
    ub: float = 1.0

    @classmethod
    def from_positions(
        cls, positions, fitness_fn: FitnessFn, lb: float = 0.0, ub: float = 1.0,
        fitness: Optional[np.ndarray] = None,
    ) -> "SalpChain":
        """Build a chain; pass ``fitness`` to reuse known values instead of re-evaluating."""
        salps = clamp(np.atleast_2d(np.asarray(positions, dtype=float)), lb, ub)
        if fitness is None:
            fitness = evaluate_all(fitness_fn, salps)
        fitness = np.asarray(fitness, dtype=float).copy()
        best = int(np.argmin(fitness))
        return cls(salps, fitness, salps[best].copy(), float(fitness[best]), lb, ub)

    @classmethod
    def random(
        cls, size: int, dim: int, fitness_fn: FitnessFn, rng: RandomSource,
        lb: float = 0.0, ub: float = 1.0,
    ) -> "SalpChain":
        salps = np.array([rng.uniform_array(dim, lb, ub) for _ in range(size)])
        return cls.from_positions(salps, fitness_fn, lb, ub)

    @property
    def size(self) -> int:
        return self.salps.shape[0]

    @property
    def dim(self) -> int:
        return self.salps.shape[1]


def r1_coefficient(t: int, n_iter: int) -> float:
    """``2 exp(-(4 t / n_iter)^2)``: decays from 2 to 2 e^-16."""
    if n_iter < 1:
        raise ValueError("n_iter must be >= 1")
    if not 0 <= t <= n_iter:
        raise ValueError(f"t={t} outside [0, {n_iter}]")
    return 2.0 * math.exp(-((4.0 * t / n_iter) ** 2))


def leader_position(food, r1: float, r2, r3, lb: float = 0.0, ub: float = 1.0) -> np.ndarray:
    """Leader move with explicit ``r2``/``r3``; ``r3 >= 0.5`` adds the step, else subtracts."""
    step = r1 * ((ub - lb) * np.asarray(r2, dtype=float) + lb)
    sign = np.where(np.asarray(r3) >= 0.5, 1.0, -1.0)
    return clamp(np.asarray(food, dtype=float) + sign * step, lb, ub)


def leader_update(
    food: np.ndarray, r1: float, rng: RandomSource, lb: float = 0.0, ub: float = 1.0
) -> np.ndarray:
    if r1 <= 0:
        raise ValueError("r1 must be positive")
    dim = np.asarray(food).shape[0]
    r2 = rng.uniform_array(dim)
    r3 = rng.uniform_array(dim)
    return leader_position(food, r1, r2, r3, lb, ub)


def follower_update(current, predecessor, lb: float = 0.0, ub: float = 1.0) -> np.ndarray:
    return clamp(0.5 * (np.asarray(current, dtype=float) + np.asarray(predecessor)), lb, ub)


def ssa_step(
    chain: SalpChain, t: int, n_iter: int, fitness_fn: FitnessFn, rng: RandomSource
) -> SalpChain:
    """One leader move, one sweep of followers, re-evaluation; updates ``chain`` in place."""
    r1 = r1_coefficient(t, n_iter)
    salps = chain.salps.copy()
    salps[0] = leader_update(chain.food, r1, rng, chain.lb, chain.ub)
    for i in range(1, chain.size):
        salps[i] = follower_update(salps[i], salps[i - 1], chain.lb, chain.ub)
    chain.salps = salps
    chain.fitness = evaluate_all(fitness_fn, salps)
    best = int(np.argmin(chain.fitness))
    if chain.fitness[best] < chain.food_fitness:
        chain.food = salps[best].copy()
        chain.food_fitness = float(chain.fitness[best])
    return chain


@dataclass(frozen=True)
class SSAConfig:
    population: int = 30
    iterations: int = 20
    lb: float = 0.0
    ub: float = 1.0

    def validate(self) -> None:
        if self.population < 1:
            raise ValueError("ssa.population must be >= 1")
        if self.iterations < 0:
            raise ValueError("ssa.iterations must be >= 0")
        if not self.lb < self.ub:
            raise ValueError("bounds.lb must be below bounds.ub")


def run_chain(
    chain: SalpChain, n_iter: int, fitness_fn: FitnessFn, rng: RandomSource
) -> list[float]:
    """Advance an existing chain ``n_iter`` steps; returns the food-fitness trace."""
    trace = [chain.food_fitness]
    for t in range(n_iter):
        ssa_step(chain, t, n_iter, fitness_fn, rng)
        trace.append(chain.food_fitness)
    return trace


def ssa_run(
    config: SSAConfig, dim: int, fitness_fn: FitnessFn, rng: RandomSource,
    initial: Optional[np.ndarray] = None,
) -> SearchResult:
    """Standalone SSA.  ``initial`` injects a starting chain instead of a random one."""
    config.validate()
    counted = CountingFitness(fitness_fn)
    if initial is not None:
        chain = SalpChain.from_positions(initial, counted, config.lb, config.ub)
    else:
        chain = SalpChain.random(config.population, dim, counted, rng, config.lb, config.ub)
    trace = [chain.food_fitness]
    per_iter = [counted.count]
    for t in range(config.iterations):
        before = counted.count
        ssa_step(chain, t, config.iterations, counted, rng)
        trace.append(chain.food_fitness)
        per_iter.append(counted.count - before)
    return SearchResult("ssa", chain.food.copy(), chain.food_fitness, trace,
                        counted.count, per_iter)
