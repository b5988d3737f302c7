"""Controlled two-class benchmark: a few informative columns among uniform noise.

Two layouts for the informative columns:

``blocks`` (default)
    Every sample is assigned to one informative column.  On that column its
    value is centred at ``-separation/2`` (class 0) or ``+separation/2``
    (class 1); on the other informative columns it is centred at 0.  Each
    informative column therefore decides the class for its own share of
    the samples, and dropping any of them costs accuracy.
``shifted``
    Every informative column is centred at ``+-separation/2`` for every
    sample, so the columns are interchangeable and a subset of them is
    often enough.

Informative values get ``N(0, spread^2)`` noise; noise columns are ``U(0, 1)``.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Union

import numpy as np

from .dataset import TabularDataset
from .rng import RandomSource

LAYOUTS = ("blocks", "shifted")


def make_synthetic(
    n_samples: int = 200,
    n_informative: int = 5,
    n_noise: int = 15,
    separation: float = 4.0,
    seed: int = 0,
    spread: float = 0.5,
    layout: str = "blocks",
) -> tuple[TabularDataset, list[int]]:
    """Balanced classes with the informative columns first.

    Returns the dataset and the informative column indices.
    """
    if n_samples < 4:
        raise ValueError("need at least 4 samples")
    if n_informative < 0 or n_noise < 0 or n_informative + n_noise < 1:
        raise ValueError("need at least one feature")
    if layout not in LAYOUTS:
        raise ValueError(f"layout must be one of {LAYOUTS}, got {layout!r}")
    if spread <= 0:
        raise ValueError("spread must be positive")
    rng = RandomSource(seed)
    labels = np.array(rng.shuffle([i % 2 for i in range(n_samples)]), dtype=int)
    centre = np.where(labels == 1, separation / 2.0, -separation / 2.0)
    if layout == "blocks" and n_informative > 0:
        block = np.array(rng.shuffle([i % n_informative for i in range(n_samples)]))
    x = np.empty((n_samples, n_informative + n_noise))
    for j in range(n_informative):
        shift = centre if layout == "shifted" else np.where(block == j, centre, 0.0)
        x[:, j] = shift + spread * rng.normal_array(n_samples)
    for j in range(n_informative, n_informative + n_noise):
        x[:, j] = rng.uniform_array(n_samples)
    names = tuple(
        [f"informative_{j}" for j in range(n_informative)]
        + [f"noise_{j}" for j in range(n_noise)]
    )
    return TabularDataset(x, labels, names, ("0", "1")), list(range(n_informative))


def write_csv(ds: TabularDataset, path: Union[str, Path], label_name: str = "label") -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    names = ds.feature_names or tuple(f"f{j}" for j in range(ds.n_features))
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([*names, label_name])
        for row, label in zip(ds.features, ds.labels):
            writer.writerow([repr(float(v)) for v in row] + [int(label)])
