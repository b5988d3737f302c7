"""End-to-end experiment: split, scale, select features, score on the held-out part.

Random streams derived from the run seed:

* stream 1 - outer train/test split
* stream 2 - inner split of the training part into fitness-train / fitness-validation
* stream 3 - the optimizer

So every algorithm run with the same seed sees the same data partition.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .config import ExperimentConfig
from .dataset import TabularDataset, minmax_scale, stratified_split
from .hho import hho_run
from .hhossa import hhossa_search
from .objective import WrapperFitness
from .results import RunResult, finalize
from .rng import RandomSource
from .ssa import ssa_run

OUTER_SPLIT_STREAM = 1
INNER_SPLIT_STREAM = 2
SEARCH_STREAM = 3


class StageError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass(frozen=True)
class PreparedData:
    train: TabularDataset  # full training part, scaled
    test: TabularDataset  # held-out part, scaled with the training min/max
    fit_train: TabularDataset  # what the fitness function trains KNN on
    fit_validation: TabularDataset  # what the fitness function scores on


def prepare(ds: TabularDataset, cfg: ExperimentConfig, seed: int) -> PreparedData:
    rng = RandomSource(seed)
    outer = stratified_split(ds, cfg.train_fraction, rng.split(OUTER_SPLIT_STREAM))
    train, scaler = minmax_scale(outer.train)
    test = scaler.transform(outer.test)
    inner = stratified_split(train, cfg.fitness_fraction, rng.split(INNER_SPLIT_STREAM))
    return PreparedData(train, test, inner.train, inner.test)


def run_algorithm(
    algo: str, data: PreparedData, cfg: ExperimentConfig, seed: int
) -> RunResult:
    fitness = WrapperFitness(
        data.fit_train, data.fit_validation, cfg.k, cfg.a, cfg.b, cfg.threshold
    )
    rng = RandomSource(seed).split(SEARCH_STREAM)
    dim = data.train.n_features
    start = time.perf_counter()
    if algo == "hho":
        search = hho_run(cfg.hho(), dim, fitness, rng)
    elif algo == "ssa":
        search = ssa_run(cfg.ssa(), dim, fitness, rng)
    elif algo == "hhossa":
        search = hhossa_search(cfg.hybrid(seed), dim, fitness, rng)
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    elapsed = time.perf_counter() - start
    return finalize(
        search, seed, data.train, data.test, cfg.k, cfg.threshold,
        cfg.positive_class, elapsed, cfg.to_keys(),
    )


def run_on_dataset(ds: TabularDataset, cfg: ExperimentConfig) -> list[RunResult]:
    """Every configured algorithm for ``repeat`` consecutive seeds."""
    results = []
    for offset in range(cfg.repeat):
        seed = (cfg.seed + offset) % 2**64
        try:
            data = prepare(ds, cfg, seed)
        except ValueError as exc:
            raise StageError("split", str(exc)) from exc
        for algo in cfg.algo:
            try:
                results.append(run_algorithm(algo, data, cfg, seed))
            except ValueError as exc:
                raise StageError(f"optimize ({algo})", str(exc)) from exc
    return results


# --- tables ------------------------------------------------------------------

RESULT_COLUMNS = [
    "algo", "seed", "classifier", "accuracy_percent", "precision", "recall", "f1",
    "specificity", "n_selected", "best_fitness",
]


def _metric_row(r: RunResult) -> dict:
    m = r.test_metrics
    row = {"algo": r.algo, "seed": r.seed, "classifier": "KNN",
           "n_selected": r.n_selected, "best_fitness": repr(r.best_fitness)}
    if m is None:
        row.update(accuracy_percent="", precision="", recall="", f1="", specificity="")
    else:
        row.update(
            accuracy_percent=repr(m.accuracy * 100.0),
            precision=f"{m.precision:.2f}",
            recall=f"{m.recall:.2f}",
            f1=f"{m.f1:.2f}",
            specificity=f"{m.specificity:.2f}",
        )
    return row


def _median(values: Iterable[float]) -> Optional[float]:
    values = list(values)
    return statistics.median(values) if values else None


def summarize(results: Sequence[RunResult]) -> list[dict]:
    """One median row per algorithm."""
    rows = []
    for algo in dict.fromkeys(r.algo for r in results):
        runs = [r for r in results if r.algo == algo]
        scored = [r.test_metrics for r in runs if r.test_metrics is not None]

        def med(attr, fmt):
            v = _median(getattr(m, attr) for m in scored)
            return "" if v is None else fmt(v)

        rows.append({
            "algo": algo,
            "seed": f"median of {len(runs)}",
            "classifier": "KNN",
            "accuracy_percent": med("accuracy", lambda v: repr(v * 100.0)),
            "precision": med("precision", lambda v: f"{v:.2f}"),
            "recall": med("recall", lambda v: f"{v:.2f}"),
            "f1": med("f1", lambda v: f"{v:.2f}"),
            "specificity": med("specificity", lambda v: f"{v:.2f}"),
            "n_selected": repr(_median(r.n_selected for r in runs)),
            "best_fitness": repr(_median(r.best_fitness for r in runs)),
        })
    return rows


def results_table(results: Sequence[RunResult]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=RESULT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in results:
        writer.writerow(_metric_row(r))
    if len({r.seed for r in results}) > 1:
        for row in summarize(results):
            writer.writerow(row)
    return buf.getvalue()


TIMING_COLUMNS = ["algo", "runs", "classification_seconds", "optimization_seconds"]


def emit_timing(results: Sequence[RunResult]) -> str:
    """Timing table as CSV text.

    ``classification_seconds`` is the time to classify the held-out test set
    with the selected features (fastest of several repeats);
    ``optimization_seconds`` covers the whole feature-selection search.  Both
    are medians over seeds.  When hho, ssa and hhossa are all present, a
    ``hho+ssa`` row holds the sums and a ``hhossa<hho+ssa`` row says whether
    the hybrid came in under them.
    """
    if not results:
        raise ValueError("emit_timing needs at least one result")
    rows = {}
    for algo in dict.fromkeys(r.algo for r in results):
        runs = [r for r in results if r.algo == algo]
        rows[algo] = (
            len(runs),
            _median(r.classification_seconds for r in runs),
            _median(r.optimization_seconds for r in runs),
        )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TIMING_COLUMNS)
    for algo, (n, cls_s, opt_s) in rows.items():
        writer.writerow([algo, n, repr(cls_s), repr(opt_s)])
    if all(a in rows for a in ("hho", "ssa", "hhossa")):
        sum_cls = rows["hho"][1] + rows["ssa"][1]
        sum_opt = rows["hho"][2] + rows["ssa"][2]
        writer.writerow(["hho+ssa", "", repr(sum_cls), repr(sum_opt)])
        writer.writerow([
            "hhossa<hho+ssa", "",
            str(rows["hhossa"][1] < sum_cls).lower(),
            str(rows["hhossa"][2] < sum_opt).lower(),
        ])
    return buf.getvalue()


def convergence_table(results: Sequence[RunResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["algo", "seed", "iteration", "best_fitness"])
    for r in results:
        for t, v in enumerate(r.trace):
            writer.writerow([r.algo, r.seed, t, repr(v)])
    return buf.getvalue()


def write_outputs(results: Sequence[RunResult], output: Path) -> list[Path]:
    output.mkdir(parents=True, exist_ok=True)
    written = []
    for r in results:
        path = output / f"{r.algo}_seed{r.seed}.json"
        path.write_text(r.to_json() + "\n", encoding="utf-8")
        written.append(path)
    for name, text in (
        ("results.csv", results_table(results)),
        ("timing.csv", emit_timing(results)),
        ("convergence.csv", convergence_table(results)),
    ):
        path = output / name
        path.write_text(text, encoding="utf-8")
        written.append(path)
    summary = output / "summary.json"
    summary.write_text(json.dumps(
        {"runs": [f"{r.algo}_seed{r.seed}.json" for r in results],
         "median": summarize(results)},
        indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(summary)
    return written
