"""Wrapper feature selection with Harris Hawks, Salp Swarm and their hybrid."""

__version__ = "0.1.0"

from .dataset import (
    DatasetError,
    MinMaxScaler,
    SplitPair,
    TabularDataset,
    load_csv,
    minmax_scale,
    project,
    stratified_split,
)
from .hho import HHOConfig, HawkPopulation, hho_run, hho_step
from .hhossa import HybridConfig, hhossa_run, hhossa_search, hybrid_refine
from .knn import KnnModel, error_rate
from .metrics import ConfusionCounts, classification_report, confusion
from .objective import FitnessReport, WrapperFitness, binarize, evaluate
from .results import RunResult
from .rng import RandomSource
from .search import SearchResult
from .ssa import SalpChain, SSAConfig, ssa_run, ssa_step

__all__ = [
    "ConfusionCounts", "DatasetError", "FitnessReport", "HHOConfig", "HawkPopulation",
    "HybridConfig", "KnnModel", "MinMaxScaler", "RandomSource", "RunResult", "SSAConfig",
    "SalpChain", "SearchResult", "SplitPair", "TabularDataset", "WrapperFitness",
    "binarize", "classification_report", "confusion", "error_rate", "evaluate",
    "hho_run", "hho_step", "hhossa_run", "hhossa_search", "hybrid_refine", "load_csv",
    "minmax_scale", "project", "ssa_run", "ssa_step", "stratified_split",
]
