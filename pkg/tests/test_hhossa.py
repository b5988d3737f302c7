import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swarmselect.dataset import TabularDataset, stratified_split
from swarmselect.hho import HawkPopulation
from swarmselect.hhossa import HybridConfig, hhossa_run, hhossa_search, hybrid_refine
from swarmselect.objective import WrapperFitness
from swarmselect.rng import RandomSource

from .helpers import sphere


def test_refine_zero_iterations_returns_population_best():
    pop = HawkPopulation.random(6, 3, sphere, RandomSource(0))
    best, f = hybrid_refine(pop, 0, sphere, RandomSource(1))
    assert f == pop.fitness.min()
    assert np.array_equal(best, pop.positions[np.argmin(pop.fitness)])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_refine_never_worse_and_leaves_population(seed):
    pop = HawkPopulation.random(5, 3, sphere, RandomSource(seed))
    snapshot = pop.copy()
    best, f = hybrid_refine(pop, 4, sphere, RandomSource(seed + 1))
    assert f <= snapshot.fitness.min()
    assert sphere(best) == f
    assert np.array_equal(pop.positions, snapshot.positions)
    assert np.array_equal(pop.fitness, snapshot.fitness)


def test_refine_deterministic():
    pop = HawkPopulation.random(5, 3, sphere, RandomSource(2))
    a = hybrid_refine(pop, 6, sphere, RandomSource(9))
    b = hybrid_refine(pop, 6, sphere, RandomSource(9))
    assert a[1] == b[1] and np.array_equal(a[0], b[0])


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_trace_and_acceptances(seed):
    cfg = HybridConfig(population=5, hho_iterations=6, ssa_iterations=3)
    res = hhossa_search(cfg, 4, sphere, RandomSource(seed))
    assert len(res.trace) == 7
    assert all(a >= b for a, b in zip(res.trace, res.trace[1:]))
    for it, f_hho, f_ssa in res.acceptances:
        assert f_ssa < f_hho
        assert res.trace[it] == f_ssa
    # per-iteration evaluations: H hawks + up to 2 dive probes each + H * ssa iterations
    bound = cfg.population * 3 + cfg.population * cfg.ssa_iterations
    assert max(res.evaluations_per_iteration[1:]) <= bound


def test_degenerate_dimension():
    ds = TabularDataset([[0.1], [0.2], [0.8], [0.9], [0.15], [0.85]], [0, 0, 1, 1, 0, 1])
    cfg = HybridConfig(population=3, hho_iterations=1, ssa_iterations=1, k=1)
    res = hhossa_run(cfg, ds, ds, ds, RandomSource(0))
    assert res.best_mask.tolist() in ([0], [1])
    if res.best_mask.tolist() == [0]:
        assert res.best_fitness == 1.0 and res.test_metrics is None


def test_recovers_separating_feature(separable):
    pair = stratified_split(separable, 0.8, RandomSource(100))
    fit = stratified_split(pair.train, 0.8, RandomSource(101))
    hits = 0
    for seed in range(10):
        cfg = HybridConfig(population=10, hho_iterations=15, ssa_iterations=5, seed=seed)
        res = hhossa_run(cfg, fit.train, fit.test, pair.test, RandomSource(seed),
                         full_train=pair.train)
        hits += int(res.best_mask[0] == 1)
    assert hits >= 9


def test_run_replays_exactly(separable):
    cfg = HybridConfig(population=6, hho_iterations=5, ssa_iterations=3, seed=4)
    a = hhossa_run(cfg, separable, separable, separable, RandomSource(4))
    b = hhossa_run(cfg, separable, separable, separable, RandomSource(4))
    da, db = a.to_dict(), b.to_dict()
    da.pop("timing"), db.pop("timing")
    assert da == db


def test_bad_config():
    with pytest.raises(ValueError):
        hhossa_search(HybridConfig(population=0), 2, sphere, RandomSource(0))
