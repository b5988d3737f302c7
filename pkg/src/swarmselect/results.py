"""Run records and the final held-out evaluation of a selected mask."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .dataset import TabularDataset, project
from .knn import KnnModel
from .metrics import MetricsReport, classification_report, confusion
from .search import SearchResult

SCHEMA_VERSION = 1

# keys in the JSON record that are measured clock time and so differ between replays
TIMING_KEY = "timing"

# repeated timings of the test-set classification; the minimum is reported
CLASSIFY_TIMING_REPEATS = 5


@dataclass
class RunResult:
    algo: str
    seed: int
    best_mask: np.ndarray
    best_fitness: float
    n_selected: int
    trace: list[float]
    test_metrics: Optional[MetricsReport]
    wall_time_seconds: float = 0.0
    optimization_seconds: float = 0.0
    classification_seconds: float = 0.0
    evaluations: int = 0
    evaluations_per_iteration: list[int] = field(default_factory=list)
    acceptances: list[tuple[int, float, float]] = field(default_factory=list)
    selected_features: list[str] = field(default_factory=list)
    config: dict[str, Any] = field(default_factory=dict)
    class_names: Optional[list[str]] = None
    positive_class: int = 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "algo": self.algo,
            "seed": self.seed,
            "config": self.config,
            "best_fitness": self.best_fitness,
            "n_selected": self.n_selected,
            "best_mask": [int(b) for b in self.best_mask],
            "selected_features": list(self.selected_features),
            "class_names": self.class_names,
            "positive_class": self.positive_class,
            "test_metrics": None if self.test_metrics is None else self.test_metrics.to_dict(),
            "trace": [float(v) for v in self.trace],
            "evaluations": self.evaluations,
            "evaluations_per_iteration": list(self.evaluations_per_iteration),
            "acceptances": [list(a) for a in self.acceptances],
            TIMING_KEY: {
                "wall_time_seconds": self.wall_time_seconds,
                "optimization_seconds": self.optimization_seconds,
                "classification_seconds": self.classification_seconds,
            },
        }

    def to_json(self) -> str:
        payload = self.to_dict()
        _check_finite(payload)
        return json.dumps(payload, indent=2, sort_keys=True)


def _check_finite(obj, path="$"):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise ValueError(f"non-finite number at {path}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_finite(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _check_finite(v, f"{path}[{i}]")


def without_timing(payload: dict) -> dict:
    return {k: v for k, v in payload.items() if k != TIMING_KEY}


def holdout_evaluation(
    mask: np.ndarray, train: TabularDataset, test: TabularDataset, k: int,
    positive_class: int = 1,
) -> tuple[Optional[MetricsReport], float]:
    """Fit KNN on the masked training data and score the test set.

    Returns the metrics and the best-of-N wall time of the test classification.
    An empty mask yields ``(None, 0.0)``.
    """
    if not np.any(mask):
        return None, 0.0
    model = KnnModel(project(train, mask), k)
    test_x = project(test, mask).features
    best = math.inf
    predicted = None
    for _ in range(CLASSIFY_TIMING_REPEATS):
        start = time.perf_counter()
        predicted = model.predict_many(test_x)
        best = min(best, time.perf_counter() - start)
    report = classification_report(confusion(predicted, test.labels, positive_class))
    return report, best


def finalize(
    search: SearchResult, seed: int, train: TabularDataset, test: TabularDataset,
    k: int, threshold: float = 0.5, positive_class: int = 1,
    optimization_seconds: float = 0.0, config: Optional[dict] = None,
) -> RunResult:
    mask = search.best_mask(threshold)
    metrics, classify_s = holdout_evaluation(mask, train, test, k, positive_class)
    names = []
    if train.feature_names is not None:
        names = [n for n, m in zip(train.feature_names, mask) if m]
    return RunResult(
        algo=search.algo,
        seed=seed,
        best_mask=mask,
        best_fitness=float(search.best_fitness),
        n_selected=int(mask.sum()),
        trace=[float(v) for v in search.trace],
        test_metrics=metrics,
        wall_time_seconds=optimization_seconds + classify_s,
        optimization_seconds=optimization_seconds,
        classification_seconds=classify_s,
        evaluations=search.evaluations,
        evaluations_per_iteration=list(search.evaluations_per_iteration),
        acceptances=list(search.acceptances),
        selected_features=names,
        config=dict(config or {}),
        class_names=None if train.class_names is None else list(train.class_names),
        positive_class=positive_class,
    )
