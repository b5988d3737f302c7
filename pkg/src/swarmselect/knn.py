"""Brute-force k-nearest-neighbour classifier (Euclidean, majority vote)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import TabularDataset


@dataclass(frozen=True)
class KnnModel:
    """KNN over a fixed training set.

    Neighbours are ranked by Euclidean distance with ties going to the lower
    training row index.  Vote ties (possible only for even ``k``) go to the
    lower class id.  With ``require_odd`` set, even ``k`` is rejected for the
    two-class case.
    """

    train: TabularDataset
    k: int = 5
    require_odd: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.k > self.train.n_samples:
            raise ValueError(
                f"k={self.k} exceeds the {self.train.n_samples} training samples"
            )
        if self.require_odd and self.k % 2 == 0:
            raise ValueError(f"k must be odd for two-class voting, got {self.k}")

    def predict_many(self, queries: np.ndarray) -> np.ndarray:
        q = np.asarray(queries, dtype=float)
        if q.ndim == 1:
            q = q[None, :]
        if q.shape[1] != self.train.n_features:
            raise ValueError(
                f"query has {q.shape[1]} features, model expects {self.train.n_features}"
            )
        x = self.train.features
        # squared distances; exact differences rather than the expanded dot-product form
        # so equal points tie exactly
        d2 = ((q[:, None, :] - x[None, :, :]) ** 2).sum(axis=2)
        order = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
        votes_for_one = self.train.labels[order].sum(axis=1)
        # class 1 wins only on a strict majority; an exact tie goes to class 0
        return (2 * votes_for_one > self.k).astype(int)

    def predict(self, query: np.ndarray) -> int:
        query = np.asarray(query, dtype=float)
        if query.ndim != 1:
            raise ValueError("predict takes a single feature vector")
        return int(self.predict_many(query)[0])


def error_rate(model: KnnModel, evaluation: TabularDataset) -> float:
    """Fraction of ``evaluation`` rows the model misclassifies."""
    predicted = model.predict_many(evaluation.features)
    return float(np.mean(predicted != evaluation.labels))
