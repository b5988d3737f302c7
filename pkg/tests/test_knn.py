import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swarmselect.dataset import TabularDataset
from swarmselect.knn import KnnModel, error_rate


def oracle_predict(train_x, train_y, query, k):
    """Full sort of (distance, row index) pairs, then majority with ties to class 0."""
    dists = sorted((float(np.sum((row - query) ** 2)), i) for i, row in enumerate(train_x))
    votes = [int(train_y[i]) for _, i in dists[:k]]
    return 1 if votes.count(1) > votes.count(0) else 0


def test_nearest_point():
    m = KnnModel(TabularDataset([[0, 0], [1, 1]], [0, 1]), k=1)
    assert m.predict([0.1, 0.1]) == 0
    assert m.predict([0.9, 0.8]) == 1


def test_majority():
    m = KnnModel(TabularDataset([[0, 0], [0, 0.1], [1, 1]], [0, 0, 1]), k=3)
    assert m.predict([0, 0.05]) == 0


def test_distance_tie_goes_to_lower_row():
    # query equidistant from both points
    m = KnnModel(TabularDataset([[1.0], [-1.0]], [1, 0]), k=1)
    assert m.predict([0.0]) == 1
    m = KnnModel(TabularDataset([[-1.0], [1.0]], [0, 1]), k=1)
    assert m.predict([0.0]) == 0


def test_vote_tie_goes_to_lower_class():
    m = KnnModel(TabularDataset([[0.0], [0.1], [5.0]], [1, 0, 1]), k=2, require_odd=False)
    assert m.predict([0.0]) == 0


@pytest.mark.parametrize("k", [1, 3, 5])
def test_matches_sort_oracle(k):
    gen = np.random.default_rng(k)
    x = gen.uniform(0, 1, (50, 5))
    y = gen.integers(0, 2, 50)
    m = KnnModel(TabularDataset(x, y), k)
    queries = gen.uniform(0, 1, (100, 5))
    got = m.predict_many(queries)
    assert got.tolist() == [oracle_predict(x, y, q, k) for q in queries]


def test_oracle_with_duplicate_points():
    # duplicates force many exact distance ties
    gen = np.random.default_rng(11)
    x = gen.integers(0, 3, (40, 2)).astype(float)
    y = gen.integers(0, 2, 40)
    m = KnnModel(TabularDataset(x, y), 5)
    q = gen.integers(0, 3, (60, 2)).astype(float)
    assert m.predict_many(q).tolist() == [oracle_predict(x, y, v, 5) for v in q]


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_permutation_invariance_without_ties(seed):
    gen = np.random.default_rng(seed)
    x = gen.uniform(0, 1, (30, 3))
    y = gen.integers(0, 2, 30)
    perm = gen.permutation(30)
    q = gen.uniform(0, 1, (20, 3))
    a = KnnModel(TabularDataset(x, y), 3).predict_many(q)
    b = KnnModel(TabularDataset(x[perm], y[perm]), 3).predict_many(q)
    assert np.array_equal(a, b)


def test_error_rate_examples():
    x = np.array([[0.0], [1.0], [2.0], [3.0]])
    ds = TabularDataset(x, [0, 1, 0, 1])
    m = KnnModel(ds, 1)
    assert error_rate(m, ds) == 0.0
    flipped = TabularDataset(x, [1, 0, 1, 0])
    assert error_rate(m, flipped) == 1.0


def test_error_rate_counted_against_oracle():
    gen = np.random.default_rng(3)
    x = gen.uniform(0, 1, (20, 2))
    y = gen.integers(0, 2, 20)
    m = KnnModel(TabularDataset(x, y), 3)
    ev_x = gen.uniform(0, 1, (8, 2))
    truth = np.array([oracle_predict(x, y, q, 3) for q in ev_x])
    # flip exactly two labels relative to the oracle's predictions
    ev_y = truth.copy()
    ev_y[[1, 6]] ^= 1
    assert error_rate(m, TabularDataset(ev_x, ev_y)) == 0.25


def test_argument_errors():
    ds = TabularDataset([[0, 0], [1, 1], [2, 2]], [0, 1, 0])
    with pytest.raises(ValueError, match="features"):
        KnnModel(ds, 1).predict([1.0])
    with pytest.raises(ValueError):
        KnnModel(ds, 0)
    with pytest.raises(ValueError, match="exceeds"):
        KnnModel(ds, 5)
    with pytest.raises(ValueError, match="odd"):
        KnnModel(ds, 2)
