"""Continuous positions to feature masks, and the wrapper fitness that scores a mask.

fitness = a * class_err + b * n_selected / n_features

``class_err`` is the KNN error on a validation set after training on the
same columns of a training set.  An empty mask scores the penalty value
1.0 without touching the classifier.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dataset import TabularDataset, project
from .knn import KnnModel, error_rate

EMPTY_MASK_FITNESS = 1.0


def clamp(x: np.ndarray, lb: float = 0.0, ub: float = 1.0) -> np.ndarray:
    return np.clip(np.asarray(x, dtype=float), lb, ub)


def binarize(position, threshold: float = 0.5) -> np.ndarray:
    """1 where a coordinate is strictly above ``threshold``, else 0."""
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    return (np.asarray(position, dtype=float) > threshold).astype(np.int8)


@dataclass(frozen=True)
class FitnessReport:
    fitness: float
    class_err: Optional[float]  # None for the empty mask
    n_selected: int
    mask: np.ndarray

    @property
    def empty(self) -> bool:
        return self.n_selected == 0


def combine(class_err: float, n_selected: int, n_features: int, a: float, b: float) -> float:
    return a * class_err + b * (n_selected / n_features)


def evaluate_mask(
    mask: np.ndarray,
    train: TabularDataset,
    validation: TabularDataset,
    k: int = 5,
    a: float = 0.9,
    b: float = 0.1,
) -> FitnessReport:
    mask = np.asarray(mask).astype(np.int8)
    if train.n_features != validation.n_features or mask.shape != (train.n_features,):
        raise ValueError(
            f"dimension mismatch: mask {mask.shape}, train {train.n_features},"
            f" validation {validation.n_features}"
        )
    n_selected = int(mask.sum())
    if n_selected == 0:
        return FitnessReport(EMPTY_MASK_FITNESS, None, 0, mask)
    model = KnnModel(project(train, mask), k)
    err = error_rate(model, project(validation, mask))
    return FitnessReport(
        combine(err, n_selected, train.n_features, a, b), err, n_selected, mask
    )


def evaluate(
    position,
    train: TabularDataset,
    validation: TabularDataset,
    k: int = 5,
    a: float = 0.9,
    b: float = 0.1,
    threshold: float = 0.5,
) -> FitnessReport:
    if not 0.0 < a <= 1.0 or b < 0.0:
        raise ValueError(f"need 0 < a <= 1 and b >= 0, got a={a}, b={b}")
    position = np.asarray(position, dtype=float)
    if position.shape != (train.n_features,):
        raise ValueError(
            f"position length {position.shape} != n_features {train.n_features}"
        )
    return evaluate_mask(binarize(position, threshold), train, validation, k, a, b)


class WrapperFitness:
    """Callable ``position -> fitness`` for the optimizers.

    Results are memoised per mask, which is safe because evaluation is a pure
    function of the mask.  ``calls`` counts every request, ``evaluations``
    counts classifier runs.
    """

    def __init__(
        self,
        train: TabularDataset,
        validation: TabularDataset,
        k: int = 5,
        a: float = 0.9,
        b: float = 0.1,
        threshold: float = 0.5,
    ):
        if train.n_features != validation.n_features:
            raise ValueError("train and validation feature counts differ")
        if not 0.0 < a <= 1.0 or b < 0.0:
            raise ValueError(f"need 0 < a <= 1 and b >= 0, got a={a}, b={b}")
        binarize(np.zeros(1), threshold)  # validates threshold
        self.train = train
        self.validation = validation
        self.k = k
        self.a = a
        self.b = b
        self.threshold = threshold
        self.calls = 0
        self.evaluations = 0
        self._cache: dict[bytes, FitnessReport] = {}
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self.train.n_features

    def report(self, position) -> FitnessReport:
        mask = binarize(position, self.threshold)
        key = mask.tobytes()
        with self._lock:
            self.calls += 1
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        rep = evaluate_mask(mask, self.train, self.validation, self.k, self.a, self.b)
        with self._lock:
            if key not in self._cache:
                self.evaluations += 1
                self._cache[key] = rep
        return rep

    def __call__(self, position) -> float:
        return self.report(position).fitness
