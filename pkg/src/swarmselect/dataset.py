"""Labeled tabular data: CSV loading, min-max scaling, stratified splits, column projection."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .rng import RandomSource


class DatasetError(ValueError):
    """Raised for unreadable, malformed or unsuitable datasets."""


@dataclass(frozen=True)
class TabularDataset:
    features: np.ndarray
    labels: np.ndarray
    feature_names: Optional[tuple[str, ...]] = None
    class_names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        x = np.array(self.features, dtype=float)
        y = np.array(self.labels, dtype=int)
        if x.ndim != 2:
            raise DatasetError(f"features must be 2-D, got shape {x.shape}")
        if y.shape != (x.shape[0],):
            raise DatasetError(
                f"labels length {y.shape} does not match {x.shape[0]} samples"
            )
        if x.shape[0] < 1 or x.shape[1] < 1:
            raise DatasetError(f"need >= 1 sample and >= 1 feature, got {x.shape}")
        if not np.all(np.isfinite(x)):
            r, c = np.argwhere(~np.isfinite(x))[0]
            raise DatasetError(f"non-finite value at row {r}, column {c}")
        if not np.all(np.isin(y, (0, 1))):
            raise DatasetError("labels must be 0/1")
        if self.feature_names is not None and len(self.feature_names) != x.shape[1]:
            raise DatasetError("feature_names length does not match n_features")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "features", x)
        object.__setattr__(self, "labels", y)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def rows(self, idx: Sequence[int]) -> "TabularDataset":
        idx = np.asarray(idx, dtype=int)
        return TabularDataset(
            self.features[idx], self.labels[idx], self.feature_names, self.class_names
        )


@dataclass(frozen=True)
class SplitPair:
    train: TabularDataset
    test: TabularDataset
    split_seed: int
    train_index: np.ndarray = field(repr=False)
    test_index: np.ndarray = field(repr=False)


def load_csv(path: Union[str, Path], label_column: Union[str, int] = -1) -> TabularDataset:
    """Read a headered CSV whose label column holds exactly two distinct values.

    Labels are mapped to 0/1 by sorted order of the raw strings (numeric
    labels are sorted numerically); the mapping is kept in ``class_names``.
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"{path}: no such file")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise DatasetError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    if len(body) < 2:
        raise DatasetError(f"{path}: need at least 2 data rows, found {len(body)}")

    if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
        if label_column not in header:
            raise DatasetError(f"{path}: label column {label_column!r} not in header")
        label_idx = header.index(label_column)
    else:
        label_idx = int(label_column)
        if not -len(header) <= label_idx < len(header):
            raise DatasetError(f"{path}: label column index {label_idx} out of range")
        label_idx %= len(header)

    feature_cols = [i for i in range(len(header)) if i != label_idx]
    if not feature_cols:
        raise DatasetError(f"{path}: no feature columns")

    values = np.empty((len(body), len(feature_cols)))
    raw_labels = []
    for r, row in enumerate(body, start=2):  # 1-based line numbers, header is line 1
        if len(row) != len(header):
            raise DatasetError(
                f"{path}: line {r} has {len(row)} cells, header has {len(header)}"
            )
        for j, c in enumerate(feature_cols):
            cell = row[c].strip()
            try:
                v = float(cell)
            except ValueError:
                raise DatasetError(
                    f"{path}: line {r}, column {header[c]!r}: non-numeric value {cell!r}"
                ) from None
            if not math.isfinite(v):
                raise DatasetError(
                    f"{path}: line {r}, column {header[c]!r}: non-finite value {cell!r}"
                )
            values[r - 2, j] = v
        raw_labels.append(row[label_idx].strip())

    distinct = sorted(set(raw_labels), key=_label_sort_key)
    if len(distinct) != 2:
        raise DatasetError(
            f"{path}: label column {header[label_idx]!r} must have exactly 2 classes,"
            f" found {len(distinct)}: {distinct[:10]}"
        )
    mapping = {lab: i for i, lab in enumerate(distinct)}
    labels = np.array([mapping[lab] for lab in raw_labels], dtype=int)
    return TabularDataset(
        values,
        labels,
        feature_names=tuple(header[c] for c in feature_cols),
        class_names=tuple(distinct),
    )


def _label_sort_key(label: str):
    try:
        return (0, float(label), label)
    except ValueError:
        return (1, 0.0, label)


@dataclass(frozen=True)
class MinMaxScaler:
    """Per-feature ``(min, max)`` fitted on one dataset, applied to others with clamping."""

    minimum: np.ndarray
    maximum: np.ndarray

    def transform(self, ds: TabularDataset) -> TabularDataset:
        if ds.n_features != self.minimum.shape[0]:
            raise DatasetError("scaler fitted on a different number of features")
        span = self.maximum - self.minimum
        safe = np.where(span > 0, span, 1.0)
        scaled = (ds.features - self.minimum) / safe
        scaled = np.where(span > 0, scaled, 0.0)
        scaled = np.clip(scaled, 0.0, 1.0)
        return TabularDataset(scaled, ds.labels, ds.feature_names, ds.class_names)


def minmax_scale(ds: TabularDataset) -> tuple[TabularDataset, MinMaxScaler]:
    """Scale every column to [0, 1]; constant columns become 0."""
    scaler = MinMaxScaler(ds.features.min(axis=0), ds.features.max(axis=0))
    return scaler.transform(ds), scaler


def stratified_split(
    ds: TabularDataset, train_fraction: float, rng: RandomSource
) -> SplitPair:
    """Class-stratified random partition.

    Each class contributes ``round(train_fraction * n_class)`` rows to train,
    kept between 1 and ``n_class - 1`` so both sides see every class.  Rows
    keep their original relative order on each side.
    """
    if not 0.0 < train_fraction < 1.0:
        raise DatasetError(f"train_fraction must be in (0, 1), got {train_fraction}")
    train_idx: list[int] = []
    for cls in np.unique(ds.labels):
        members = np.flatnonzero(ds.labels == cls).tolist()
        if len(members) < 2:
            raise DatasetError(f"class {cls} has {len(members)} sample(s); need >= 2 to split")
        n_train = int(math.floor(train_fraction * len(members) + 0.5))
        n_train = min(max(n_train, 1), len(members) - 1)
        train_idx.extend(rng.shuffle(members)[:n_train])
    train_index = np.array(sorted(train_idx), dtype=int)
    test_index = np.setdiff1d(np.arange(ds.n_samples), train_index)
    return SplitPair(
        ds.rows(train_index), ds.rows(test_index), rng.seed, train_index, test_index
    )


def project(ds: TabularDataset, mask: Sequence[int]) -> TabularDataset:
    """Keep only the columns where ``mask`` is 1."""
    mask = np.asarray(mask).astype(bool)
    if mask.shape != (ds.n_features,):
        raise DatasetError(f"mask length {mask.shape[0]} != n_features {ds.n_features}")
    if not mask.any():
        raise DatasetError("cannot project onto an empty feature mask")
    names = None
    if ds.feature_names is not None:
        names = tuple(n for n, keep in zip(ds.feature_names, mask) if keep)
    return TabularDataset(ds.features[:, mask], ds.labels, names, ds.class_names)


def concatenate(a: TabularDataset, b: TabularDataset) -> TabularDataset:
    return TabularDataset(
        np.vstack([a.features, b.features]),
        np.concatenate([a.labels, b.labels]),
        a.feature_names,
        a.class_names,
    )
