"""Experiment runner reproducing the quadratic-over-simplex comparisons."""

from .config import ExperimentConfig, load_config, parse_config_text
from .plotting import emit_plots
from .runner import ExperimentResult, build_setup, run_experiment, run_method, sweep_batch

__all__ = [
    "ExperimentConfig",
    "load_config",
    "parse_config_text",
    "emit_plots",
    "ExperimentResult",
    "build_setup",
    "run_experiment",
    "run_method",
    "sweep_batch",
]
