"""Experiment runner, CSV/SVG output and the counterexample corpus."""

from .corpus import CORPUS, WitnessRegression, WitnessResult, witness_corpus
from .experiments import (
    COLUMNS,
    ExperimentRecord,
    GridConfig,
    GridPoint,
    emit_csv,
    parse_csv,
    run_experiment,
    summarize,
)
from .plot import emit_plot

__all__ = [
    "CORPUS",
    "COLUMNS",
    "ExperimentRecord",
    "GridConfig",
    "GridPoint",
    "WitnessRegression",
    "WitnessResult",
    "emit_csv",
    "emit_plot",
    "parse_csv",
    "run_experiment",
    "summarize",
    "witness_corpus",
]
