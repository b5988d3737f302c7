"""Binary confusion counts and the metrics derived from them.

F1 is the harmonic mean of precision and recall.  Any metric whose
denominator is zero evaluates to 0.0; :func:`classification_report` records
which ones were affected in ``undefined``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.tn, self.fp, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def transposed(self) -> "ConfusionCounts":
        """Counts with the roles of the two classes swapped."""
        return ConfusionCounts(tp=self.tn, tn=self.tp, fp=self.fn, fn=self.fp)


def confusion(predicted, actual, positive_class: int = 1) -> ConfusionCounts:
    predicted = np.asarray(predicted)
    actual = np.asarray(actual)
    if predicted.shape != actual.shape or predicted.ndim != 1:
        raise ValueError(
            f"predicted {predicted.shape} and actual {actual.shape} must be equal-length vectors"
        )
    if predicted.size == 0:
        raise ValueError("need at least one prediction")
    pred_pos = predicted == positive_class
    act_pos = actual == positive_class
    return ConfusionCounts(
        tp=int(np.sum(pred_pos & act_pos)),
        tn=int(np.sum(~pred_pos & ~act_pos)),
        fp=int(np.sum(pred_pos & ~act_pos)),
        fn=int(np.sum(~pred_pos & act_pos)),
    )


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def accuracy(c: ConfusionCounts) -> float:
    return _ratio(c.tp + c.tn, c.total)


def precision(c: ConfusionCounts) -> float:
    return _ratio(c.tp, c.tp + c.fp)


def recall(c: ConfusionCounts) -> float:
    return _ratio(c.tp, c.tp + c.fn)


def specificity(c: ConfusionCounts) -> float:
    return _ratio(c.tn, c.tn + c.fp)


def f1_from(p: float, r: float) -> float:
    return _ratio(2.0 * p * r, p + r)


def f1(c: ConfusionCounts) -> float:
    return f1_from(precision(c), recall(c))


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    precision: float
    recall: float
    specificity: float
    f1: float
    counts: ConfusionCounts
    undefined: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        out = asdict(self)
        out["undefined"] = list(self.undefined)
        return out


def classification_report(c: ConfusionCounts) -> MetricsReport:
    undefined = []
    if c.total == 0:
        undefined.append("accuracy")
    if c.tp + c.fp == 0:
        undefined.append("precision")
    if c.tp + c.fn == 0:
        undefined.append("recall")
    if c.tn + c.fp == 0:
        undefined.append("specificity")
    p, r = precision(c), recall(c)
    if p + r == 0:
        undefined.append("f1")
    return MetricsReport(
        accuracy=accuracy(c),
        precision=p,
        recall=r,
        specificity=specificity(c),
        f1=f1_from(p, r),
        counts=c,
        undefined=tuple(undefined),
    )
