"""Harris Hawks Optimization over the box [lb, ub]^D (minimisation).

The update rules are exposed twice: as pure functions that take every
random number explicitly (``perch_on_random_hawk``, ``soft_besiege`` ...),
and as the drawing wrappers ``exploration_update`` / ``besiege_update`` used
by :func:`hho_step`.

Per hawk and iteration the draws happen in this order:

1. ``E0 ~ U(-1, 1)`` and ``r5 ~ U(0, 1)``, giving ``J = 2 (1 - r5)``.
2. If ``|E| >= 1``: ``q``; then either (random hawk index, r1, r2) or (r3, r4).
3. Otherwise ``r``; the two dive branches then draw ``S`` (D uniforms) and a
   Levy vector (D normals for ``u``, then D normals for ``v``).
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
class HawkPopulation:
    positions: np.ndarray  # (H, D)
    fitness: np.ndarray  # (H,)
    rabbit: np.ndarray
    rabbit_fitness: float
    lb: float = 0.0
    ub: float = 1.0

    @classmethod
    def from_positions(
        cls, positions, fitness_fn: FitnessFn, lb: float = 0.0, ub: float = 1.0
    ) -> "HawkPopulation":
        positions = clamp(np.atleast_2d(np.asarray(positions, dtype=float)), lb, ub)
        fitness = evaluate_all(fitness_fn, positions)
        best = int(np.argmin(fitness))
        return cls(positions, fitness, positions[best].copy(), float(fitness[best]), lb, ub)

    @classmethod
    def random(
        cls, size: int, dim: int, fitness_fn: FitnessFn, rng: RandomSource,
        lb: float = 0.0, ub: float = 1.0,
    ) -> "HawkPopulation":
        positions = np.array([rng.uniform_array(dim, lb, ub) for _ in range(size)])
        return cls.from_positions(positions, fitness_fn, lb, ub)

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    def mean(self) -> np.ndarray:
        return self.positions.mean(axis=0)

    def absorb(self) -> None:
        """Promote the best current hawk to rabbit if it beats the rabbit."""
        best = int(np.argmin(self.fitness))
        if self.fitness[best] < self.rabbit_fitness:
            self.rabbit = self.positions[best].copy()
            self.rabbit_fitness = float(self.fitness[best])

    def copy(self) -> "HawkPopulation":
        return HawkPopulation(
            self.positions.copy(), self.fitness.copy(), self.rabbit.copy(),
            self.rabbit_fitness, self.lb, self.ub,
        )


def energy(e0: float, t: int, t_max: int) -> float:
    """Escaping energy ``2 E0 (1 - t / t_max)``."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    if not 0 <= t <= t_max:
        raise ValueError(f"t={t} outside [0, {t_max}]")
    return 2.0 * e0 * (1.0 - t / t_max)


def jump_strength(r5: float) -> float:
    return 2.0 * (1.0 - r5)


def levy_sigma(beta: float) -> float:
    """Mantegna scale for the numerator normal of a Levy step."""
    num = math.gamma(1.0 + beta) * math.sin(math.pi * beta / 2.0)
    den = math.gamma((1.0 + beta) / 2.0) * beta * 2.0 ** ((beta - 1.0) / 2.0)
    return (num / den) ** (1.0 / beta)


def levy_step(u: np.ndarray, v: np.ndarray, beta: float) -> np.ndarray:
    """``0.01 u sigma / |v|^(1/beta)`` for standard-normal ``u`` and ``v``."""
    return 0.01 * np.asarray(u) * levy_sigma(beta) / np.abs(np.asarray(v)) ** (1.0 / beta)


def levy_flight(dim: int, beta: float, rng: RandomSource) -> np.ndarray:
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if not 0.0 < beta <= 2.0:
        raise ValueError(f"beta must lie in (0, 2], got {beta}")
    u = rng.normal_array(dim)
    v = rng.normal_array(dim)
    return levy_step(u, v, beta)


# --- update rules with explicit random numbers -----------------------------

def perch_on_random_hawk(x, x_rand, r1: float, r2: float):
    return x_rand - r1 * np.abs(x_rand - 2.0 * r2 * x)


def perch_near_family(rabbit, mean, r3: float, r4: float, lb: float, ub: float):
    return (rabbit - mean) - r3 * (lb + r4 * (ub - lb))


def soft_besiege(x, rabbit, e: float, j: float):
    delta = rabbit - x
    return delta - e * np.abs(j * rabbit - x)


def hard_besiege(x, rabbit, e: float):
    delta = rabbit - x
    return rabbit - e * np.abs(delta)


def soft_dive_target(x, rabbit, e: float, j: float):
    return rabbit - e * np.abs(j * rabbit - x)


def hard_dive_target(mean, rabbit, e: float, j: float):
    return rabbit - e * np.abs(j * rabbit - mean)


def levy_probe(y, s, lf):
    return y + s * lf


def rapid_dive(x, fx: float, y, z, fitness_fn: FitnessFn) -> tuple[np.ndarray, float]:
    """Keep ``y`` if it improves on ``fx``, else ``z`` if that does, else ``x``.

    ``z`` is only evaluated when ``y`` is rejected.
    """
    fy = fitness_fn(y)
    if fy < fx:
        return y, fy
    fz = fitness_fn(z)
    if fz < fx:
        return z, fz
    return x, fx


# --- drawing wrappers -----------------------------------------------------

def exploration_update(
    x: np.ndarray, pop: HawkPopulation, rng: RandomSource,
    mean: Optional[np.ndarray] = None,
) -> np.ndarray:
    q = rng.next_uniform()
    if q >= 0.5:
        x_rand = pop.positions[rng.next_index(pop.size)]
        r1, r2 = rng.next_uniform(), rng.next_uniform()
        new = perch_on_random_hawk(x, x_rand, r1, r2)
    else:
        r3, r4 = rng.next_uniform(), rng.next_uniform()
        new = perch_near_family(
            pop.rabbit, pop.mean() if mean is None else mean, r3, r4, pop.lb, pop.ub
        )
    return clamp(new, pop.lb, pop.ub)


def besiege_update(
    x: np.ndarray, fx: float, pop: HawkPopulation, e: float, j: float, r: float,
    fitness_fn: FitnessFn, rng: RandomSource, beta: float = 1.5,
    mean: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, Optional[float]]:
    """Exploitation move for ``|e| < 1``.

    Returns the new position and its fitness when it is already known (the
    dive branches evaluate their probes), else ``None``.
    """
    lb, ub = pop.lb, pop.ub
    if r >= 0.5:
        if abs(e) >= 0.5:
            return clamp(soft_besiege(x, pop.rabbit, e, j), lb, ub), None
        return clamp(hard_besiege(x, pop.rabbit, e), lb, ub), None
    if abs(e) >= 0.5:
        y = soft_dive_target(x, pop.rabbit, e, j)
    else:
        y = hard_dive_target(pop.mean() if mean is None else mean, pop.rabbit, e, j)
    y = clamp(y, lb, ub)
    s = rng.uniform_array(pop.dim)
    lf = levy_flight(pop.dim, beta, rng)
    z = clamp(levy_probe(y, s, lf), lb, ub)
    return rapid_dive(x, fx, y, z, fitness_fn)


def hho_step(
    pop: HawkPopulation, t: int, t_max: int, fitness_fn: FitnessFn,
    rng: RandomSource, beta: float = 1.5,
) -> HawkPopulation:
    """Move every hawk once, re-evaluate, and refresh the rabbit (in place).

    The population mean and the pool for random-hawk picks are taken from
    the positions at the start of the step.
    """
    if not 0 <= t < t_max:
        raise ValueError(f"t={t} outside [0, {t_max})")
    start = pop.copy()
    mean = start.mean()
    new_positions = np.empty_like(pop.positions)
    known: list[Optional[float]] = []
    for i in range(pop.size):
        x = start.positions[i]
        e0 = rng.next_uniform(-1.0, 1.0)
        j = jump_strength(rng.next_uniform())
        e = energy(e0, t, t_max)
        if abs(e) >= 1.0:
            new_positions[i] = exploration_update(x, start, rng, mean)
            known.append(None)
        else:
            r = rng.next_uniform()
            new_x, fx = besiege_update(
                x, start.fitness[i], start, e, j, r, fitness_fn, rng, beta, mean
            )
            new_positions[i] = new_x
            known.append(fx)

    pending = [i for i, f in enumerate(known) if f is None]
    fitness = np.array([f if f is not None else np.nan for f in known])
    if pending:
        fitness[pending] = evaluate_all(fitness_fn, new_positions[pending])
    pop.positions = new_positions
    pop.fitness = fitness
    pop.absorb()
    return pop


@dataclass(frozen=True)
class HHOConfig:
    population: int = 30
    iterations: int = 100
    beta: float = 1.5
    lb: float = 0.0
    ub: float = 1.0

    def validate(self) -> None:
        if self.population < 1:
            raise ValueError("hho.population must be >= 1")
        if self.iterations < 0:
            raise ValueError("hho.iterations must be >= 0")
        if not self.lb < self.ub:
            raise ValueError("bounds.lb must be below bounds.ub")
        if not 0.0 < self.beta <= 2.0:
            raise ValueError("hho.beta must lie in (0, 2]")


def hho_run(config: HHOConfig, dim: int, fitness_fn: FitnessFn, rng: RandomSource) -> SearchResult:
    config.validate()
    counted = CountingFitness(fitness_fn)
    pop = HawkPopulation.random(config.population, dim, counted, rng, config.lb, config.ub)
    trace = [pop.rabbit_fitness]
    per_iter = [counted.count]
    for t in range(config.iterations):
        before = counted.count
        hho_step(pop, t, config.iterations, counted, rng, config.beta)
        trace.append(pop.rabbit_fitness)
        per_iter.append(counted.count - before)
    return SearchResult("hho", pop.rabbit.copy(), pop.rabbit_fitness, trace,
                        counted.count, per_iter)
