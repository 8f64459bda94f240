"""Experiment runner: build the problem, run each method, write CSV traces."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import BudgetError, ConfigError
from ..oracle import BlackBoxOracle, NoiseModel
from ..problems import gen_nonsmooth, gen_quadratic_simplex
from ..sampling import Streams
from ..solvers import RunTrace, ScheduleParams, zo_scgs, zscg, zscg_theory_batch
from .config import ExperimentConfig
from .plotting import emit_plots

__all__ = ["Setup", "build_setup", "run_method", "run_experiment", "sweep_batch", "ExperimentResult", "trace_filename"]

log = logging.getLogger(__name__)

# f* fallback: best value of a long fixed-batch run
REFERENCE_BUDGET_FACTOR = 100
REFERENCE_BATCH = 100


@dataclass
class Setup:
    cfg: ExperimentConfig
    instance: object
    params: ScheduleParams
    f_star: float
    f_star_source: str

    @property
    def feasible_set(self):
        return self.instance.feasible_set


def _instance(cfg: ExperimentConfig):
    if cfg.problem == "quadratic_simplex":
        return gen_quadratic_simplex(cfg.dim, cfg.lambda_min, cfg.lambda_max, cfg.seed, cfg.xi_scale)
    return gen_nonsmooth(cfg.problem, cfg.dim, cfg.seed, pieces=cfg.pieces or None, xi_scale=cfg.xi_scale)


def build_setup(cfg: ExperimentConfig) -> Setup:
    try:
        inst = _instance(cfg)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    regime = cfg.resolved_regime
    # gamma = eps/(2 M2) only shrinks as M2 grows, so constants evaluated at
    # the gamma implied by the gamma=0 constants are valid upper bounds.
    gamma_max = cfg.epsilon / (2.0 * inst.constants(cfg.p).M2)
    c = inst.constants(cfg.p, gamma_max)
    params = ScheduleParams(regime, cfg.epsilon, c.M, c.M2, c.D, cfg.p, cfg.dim, L=c.L if regime == "smooth" else None)
    setup = Setup(cfg, inst, params, float(inst.f_star), "analytic")
    if cfg.f_star == "reference":
        setup.f_star = reference_f_star(setup)
        setup.f_star_source = "reference"
    return setup


def reference_f_star(setup: Setup) -> float:
    """Lowest objective seen by a fixed-batch run at 100x the budget."""
    cfg = setup.cfg
    log.warning("f* not taken from the instance; running a reference solve at %dx budget", REFERENCE_BUDGET_FACTOR)
    oracle = BlackBoxOracle(setup.instance)
    res = zo_scgs(
        oracle,
        setup.feasible_set,
        setup.params,
        setup.feasible_set.vertex(),
        budget=cfg.budget * REFERENCE_BUDGET_FACTOR,
        batch=REFERENCE_BATCH,
        streams=Streams.from_seed(cfg.seed + 1_000_003),
    )
    return float(res.trace.column("f_value").min())


def _noise(cfg: ExperimentConfig, gamma: float) -> NoiseModel:
    if cfg.noise == "none":
        return NoiseModel()
    return NoiseModel(cfg.noise, cfg.resolved_noise_delta, gamma)


def run_method(setup: Setup, method: str, batch: int | None) -> RunTrace:
    """One seeded run; ``batch=None`` selects the theoretical schedule."""
    cfg, params = setup.cfg, setup.params
    gamma = params.gamma
    oracle = BlackBoxOracle(setup.instance, _noise(cfg, gamma))
    x0 = setup.feasible_set.vertex()
    streams = Streams.from_seed(cfg.seed)
    if method == "zo-scgs":
        res = zo_scgs(
            oracle,
            setup.feasible_set,
            params,
            x0,
            budget=cfg.budget,
            streams=streams,
            batch=batch,
            max_inner=None if cfg.max_inner == "auto" else int(float(cfg.max_inner)),
            f_star=setup.f_star,
            workers=cfg.workers,
        )
    elif method == "zscg":
        if batch is None:
            L = params.lipschitz_gradient
            batch_rule = zscg_theory_batch(cfg.dim, params.M2, L, setup.feasible_set.diameter(2).value)
        else:
            batch_rule = batch
        res = zscg(
            oracle,
            setup.feasible_set,
            x0,
            budget=cfg.budget,
            streams=streams,
            batch=batch_rule,
            gamma=gamma if cfg.zscg_gamma == "auto" else float(cfg.zscg_gamma),
            step=(cfg.zscg_step_numerator, cfg.zscg_step_shift),
            directions=cfg.zscg_directions,
            f_star=setup.f_star,
        )
    else:
        raise ConfigError(f"unknown method {method!r}")
    trace = res.trace
    if oracle.evaluations != trace.rows[-1].evaluations:
        raise AssertionError("oracle counter disagrees with the trace")
    return trace


def trace_filename(method: str, batch: int | None) -> str:
    return f"{method}_{'theory' if batch is None else f'b{batch}'}.csv"


@dataclass
class ExperimentResult:
    traces: list[RunTrace] = field(default_factory=list)
    files: list[Path] = field(default_factory=list)
    errors: dict[str, str] = field(default_factory=dict)
    plots: list[Path] = field(default_factory=list)
    setup: Setup | None = None


def _out_dir(cfg: ExperimentConfig) -> Path:
    out = Path(cfg.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output directory {out} is not writable: {exc}") from None
    return out


def _write_meta(out: Path, setup: Setup) -> None:
    (out / "config.txt").write_text(setup.cfg.to_text(), encoding="utf-8")
    record = setup.instance.to_record()
    record += f"f_star = {setup.f_star!r}\nf_star_source = {setup.f_star_source}\n"
    (out / "instance.txt").write_text(record, encoding="utf-8")


def _run_all(setup: Setup, out: Path, batches: list[int | None], isolate_errors: bool) -> ExperimentResult:
    result = ExperimentResult(setup=setup)
    for method in setup.cfg.methods:
        for batch in batches:
            name = trace_filename(method, batch)
            try:
                trace = run_method(setup, method, batch)
            except BudgetError as exc:
                if not isolate_errors:
                    raise
                log.error("%s: %s", name, exc)
                result.errors[name] = str(exc)
                continue
            result.traces.append(trace)
            result.files.append(trace.write_csv(out / name))
    return result


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run every configured method with the configured batch mode."""
    out = _out_dir(cfg)
    setup = build_setup(cfg)
    _write_meta(out, setup)
    return _run_all(setup, out, [cfg.fixed_batch], isolate_errors=False)


def sweep_batch(cfg: ExperimentConfig, values, plot: bool = True) -> ExperimentResult:
    """One trace per fixed batch value plus the theory schedule, per method.

    A batch that does not fit the budget is reported in ``errors`` and the
    remaining runs go ahead.
    """
    values = [int(v) for v in values]
    if not values:
        raise ConfigError("batch sweep needs at least one value")
    if any(v < 1 for v in values):
        raise ConfigError("batch values must be >= 1")
    out = _out_dir(cfg)
    setup = build_setup(cfg)
    _write_meta(out, setup)
    result = _run_all(setup, out, [*values, None], isolate_errors=True)
    if plot and result.traces:
        for axes in ("vs_evaluations", "vs_iterations"):
            result.plots.append(
                emit_plots(result.traces, axes=axes, log_y=True, path=out / f"sweep_{axes}.svg", title="batch size sweep")
            )
    return result
