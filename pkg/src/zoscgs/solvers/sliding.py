"""Zero-order stochastic conditional gradient sliding (ZO-SCGS)."""

from __future__ import annotations

import logging

import numpy as np

from ..errors import BudgetError, InfeasibleError
from ..oracle import BlackBoxOracle
from ..sampling import Streams
from ..sets import FeasibleSet
from ..smoothing import SmoothingConfig, estimate_gradient
from .cg import cg_procedure, default_max_inner
from .schedules import ScheduleParams, schedule
from .trace import RunTrace, SolverResult

__all__ = ["zo_scgs", "FEAS_TOL"]

log = logging.getLogger(__name__)

FEAS_TOL = 1e-9


def _reporter(oracle, objective, f_star):
    value = objective if objective is not None else oracle.objective.expected_value

    def report(x):
        f = float(value(x))
        return f, (f - f_star) if f_star is not None else float("nan")

    return report


def zo_scgs(
    oracle: BlackBoxOracle,
    feasible_set: FeasibleSet,
    params: ScheduleParams,
    x0,
    n_iter: int | None = None,
    budget: int | None = None,
    streams: Streams | None = None,
    *,
    batch: int | None = None,
    gamma: float | None = None,
    max_inner: int | None = None,
    f_star: float | None = None,
    objective=None,
    workers: int = 1,
    check_feasibility: bool = False,
    callback=None,
) -> SolverResult:
    """Minimize the oracle's objective over ``feasible_set``.

    Each outer iteration ``k`` spends ``2 B_k`` oracle queries on a batched
    two-point gradient estimate at ``z_k`` and then slides ``y`` with the
    inner conditional-gradient procedure.  A batch is either run in full or
    not started: the loop stops before an iteration whose batch would push
    the query count past ``budget``.

    ``batch`` fixes ``B_k``; otherwise the theoretical schedule is used.
    ``gamma`` defaults to ``epsilon / (2 M2)``.  Objective values in the
    trace come from ``objective`` (default: the noise-free mean of the
    oracle's objective) and are never counted as queries.
    """
    if n_iter is None and budget is None:
        raise ValueError("need n_iter, budget or both")
    if n_iter is not None and n_iter < 1:
        raise ValueError(f"n_iter must be >= 1, got {n_iter}")
    if batch is not None and batch < 1:
        raise ValueError(f"fixed batch must be >= 1, got {batch}")
    x = np.asarray(x0, dtype=float).copy()
    if not feasible_set.contains(x, FEAS_TOL):
        raise InfeasibleError("starting point is not in the feasible set")
    streams = streams if streams is not None else Streams.from_seed(0)
    cfg = SmoothingConfig(gamma if gamma is not None else params.gamma, params.p)
    if max_inner is None:
        max_inner = default_max_inner(feasible_set.dim)
    report = _reporter(oracle, objective, f_star)

    trace = RunTrace(method="zo-scgs", label="zo-scgs " + (f"fixed {batch}" if batch else "theory"))
    trace.append(0, 0, 0, 0, *report(x))
    y = x.copy()
    directions = lmo_calls = 0
    stop = "iterations"
    k = 0
    while n_iter is None or k < n_iter:
        k += 1
        sched = schedule(params, k)
        B = batch if batch is not None else sched.batch
        if budget is not None and 2 * (directions + B) > budget:
            if k == 1:
                raise BudgetError(
                    f"budget of {budget} evaluations cannot cover the first batch "
                    f"({B} directions = {2 * B} evaluations)"
                )
            stop = "budget"
            break
        z = (1.0 - sched.zeta) * x + sched.zeta * y
        est = estimate_gradient(oracle, z, cfg, B, streams.directions, streams.xi, workers=workers)
        inner = cg_procedure(est.g, y, sched.eta, sched.beta, feasible_set, max_inner)
        y = inner.u
        x = (1.0 - sched.zeta) * x + sched.zeta * y
        directions += B
        lmo_calls += inner.lmo_calls
        if inner.truncated:
            trace.truncated_inner += 1
        if check_feasibility:
            for name, pt in (("z", z), ("y", y), ("x", x)):
                if not feasible_set.contains(pt, FEAS_TOL):
                    raise InfeasibleError(f"iterate {name}_{k} left the feasible set")
        trace.append(k, directions, 2 * directions, lmo_calls, *report(x))
        if callback is not None:
            callback(k, x, y, z, est, inner)
    if trace.truncated_inner:
        log.info("inner procedure hit max_inner=%d in %d of %d iterations", max_inner, trace.truncated_inner, k)
    return SolverResult(x, trace, stop)
