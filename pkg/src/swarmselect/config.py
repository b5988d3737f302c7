"""Experiment configuration.

Keys are dotted (``hho.population``, ``fitness.a`` ...).  A config file is
JSON, either flat with dotted keys or nested objects; CLI flag names
(``population``, ``ssa_iterations`` ...) are accepted too.  Defaults follow
the reference parameter table: 30 agents, 100 HHO / 20 SSA iterations,
beta 1.5, bounds [0, 1], threshold 0.5, K = 5.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional, Union

from .hho import HHOConfig
from .hhossa import HybridConfig
from .ssa import SSAConfig

ALGORITHMS = ("hhossa", "hho", "ssa")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    hho_population: int = 30
    hho_iterations: int = 100
    hho_beta: float = 1.5
    ssa_population: int = 30
    ssa_iterations: int = 20
    lb: float = 0.0
    ub: float = 1.0
    a: float = 0.9
    b: float = 0.1
    threshold: float = 0.5
    k: int = 5
    train_fraction: float = 0.8
    fitness_fraction: float = 0.8
    positive_class: int = 1
    seed: int = 0
    dataset: Optional[str] = None
    label_column: Union[str, int] = -1
    algo: tuple[str, ...] = ("hhossa",)
    repeat: int = 1
    output: Optional[str] = None

    def validate(self) -> "ExperimentConfig":
        if self.hho_population < 1 or self.ssa_population < 1:
            raise ConfigError("population sizes must be >= 1")
        if self.hho_iterations < 0 or self.ssa_iterations < 0:
            raise ConfigError("iteration counts must be >= 0")
        if not self.lb < self.ub:
            raise ConfigError("bounds.lb must be below bounds.ub")
        if not 0.0 < self.hho_beta <= 2.0:
            raise ConfigError("hho.beta must lie in (0, 2]")
        if not 0.0 < self.a <= 1.0 or self.b < 0.0:
            raise ConfigError("need 0 < fitness.a <= 1 and fitness.b >= 0")
        if not 0.0 < self.threshold < 1.0:
            raise ConfigError("binarize.threshold must lie in (0, 1)")
        if self.k < 1:
            raise ConfigError("knn.k must be >= 1")
        for name in ("train_fraction", "fitness_fraction"):
            if not 0.0 < getattr(self, name) < 1.0:
                raise ConfigError(f"split.{name} must lie in (0, 1)")
        if self.positive_class not in (0, 1):
            raise ConfigError("metrics.positive_class must be 0 or 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        if self.repeat < 1:
            raise ConfigError("repeat must be >= 1")
        bad = [a for a in self.algo if a not in ALGORITHMS]
        if bad or not self.algo:
            raise ConfigError(f"unknown algorithm(s) {bad}; choose from {ALGORITHMS}")
        return self

    def hho(self) -> HHOConfig:
        return HHOConfig(self.hho_population, self.hho_iterations, self.hho_beta, self.lb, self.ub)

    def ssa(self) -> SSAConfig:
        return SSAConfig(self.ssa_population, self.ssa_iterations, self.lb, self.ub)

    def hybrid(self, seed: Optional[int] = None) -> HybridConfig:
        return HybridConfig(
            population=self.hho_population,
            hho_iterations=self.hho_iterations,
            ssa_iterations=self.ssa_iterations,
            beta=self.hho_beta,
            lb=self.lb,
            ub=self.ub,
            a=self.a,
            b=self.b,
            threshold=self.threshold,
            k=self.k,
            seed=self.seed if seed is None else seed,
        )

    def to_keys(self) -> dict[str, Any]:
        """Dotted-key view of the optimisation settings (no paths or run control)."""
        return {key: getattr(self, attr) for key, attr in KEYS.items() if attr in _RECORDED}


# dotted key -> attribute
KEYS = {
    "hho.population": "hho_population",
    "hho.iterations": "hho_iterations",
    "hho.beta": "hho_beta",
    "ssa.population": "ssa_population",
    "ssa.iterations": "ssa_iterations",
    "bounds.lb": "lb",
    "bounds.ub": "ub",
    "fitness.a": "a",
    "fitness.b": "b",
    "binarize.threshold": "threshold",
    "knn.k": "k",
    "split.train_fraction": "train_fraction",
    "split.fitness_fraction": "fitness_fraction",
    "metrics.positive_class": "positive_class",
    "seed": "seed",
    "dataset": "dataset",
    "label_column": "label_column",
    "algo": "algo",
    "repeat": "repeat",
    "output": "output",
}

_RECORDED = {
    "hho_population", "hho_iterations", "hho_beta", "ssa_population", "ssa_iterations",
    "lb", "ub", "a", "b", "threshold", "k", "train_fraction", "fitness_fraction",
    "positive_class",
}

# flag-style names; ``population`` sets both swarm sizes
ALIASES = {
    "iterations": ("hho.iterations",),
    "ssa_iterations": ("ssa.iterations",),
    "population": ("hho.population", "ssa.population"),
    "k": ("knn.k",),
    "train_fraction": ("split.train_fraction",),
    "positive_class": ("metrics.positive_class",),
    "beta": ("hho.beta",),
}


def _flatten(data: Mapping[str, Any], prefix: str = "") -> dict[str, Any]:
    flat = {}
    for key, value in data.items():
        key = key.replace("-", "_")
        full = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(_flatten(value, f"{full}."))
        else:
            flat[full] = value
    return flat


def _coerce(attr: str, value: Any) -> Any:
    default = next(f.default for f in fields(ExperimentConfig) if f.name == attr)
    if attr == "algo":
        return parse_algos(value)
    if attr == "label_column":
        return value
    if value is None:
        return None
    if isinstance(default, bool):
        return bool(value)
    if isinstance(default, int):
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"{attr} must be an integer, got {value}")
        return int(value)
    if isinstance(default, float):
        return float(value)
    return str(value)


def parse_algos(value: Any) -> tuple[str, ...]:
    if isinstance(value, str):
        items = [v.strip() for v in value.split(",") if v.strip()]
    else:
        items = [str(v).strip() for v in value]
    out: list[str] = []
    for item in items:
        for name in (ALGORITHMS if item == "all" else (item,)):
            if name not in out:
                out.append(name)
    return tuple(out)


def apply(cfg: ExperimentConfig, values: Mapping[str, Any]) -> ExperimentConfig:
    """Return ``cfg`` updated from dotted keys, nested mappings or flag names."""
    updates = {}
    for key, value in _flatten(values).items():
        targets = ALIASES.get(key, (key,))
        for target in targets:
            attr = KEYS.get(target)
            if attr is None:
                raise ConfigError(f"unknown config key {key!r}")
            try:
                updates[attr] = _coerce(attr, value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key!r}: {exc}") from None
    return replace(cfg, **updates)


def load_config_file(path: Union[str, Path]) -> dict[str, Any]:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such config file") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return data
