"""Zeroth-order stochastic conditional gradient (ZSCG) baseline.

Plain stochastic Frank-Wolfe driven by a forward-difference Gaussian
smoothing estimate,

    G = (1/B) sum_i (f(x + gamma u_i, xi_i) - f(x, xi_i)) / gamma * u_i,   u_i ~ N(0, I),

followed by ``x_k = (1 - a_k) x_{k-1} + a_k lmo(G)``.  Each direction costs
two queries: the shifted point and the base point under the same ``xi_i``.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..errors import BudgetError, InfeasibleError, NumericError
from ..oracle import BlackBoxOracle
from ..sampling import Streams, as_generator, sample_sphere
from ..sets import FeasibleSet
from .sliding import FEAS_TOL, _reporter
from .trace import RunTrace, SolverResult

__all__ = ["zscg", "forward_difference_gradient", "zscg_theory_batch", "step_size"]


def step_size(k: int, numerator: float = 2.0, shift: float = 2.0) -> float:
    """``numerator / (k + shift)``; the default gives ``2 / (k + 2)``."""
    return min(1.0, numerator / (k + shift))


def zscg_theory_batch(d: int, M2: float, L: float, D: float) -> Callable[[int], int]:
    """Growing batch ``ceil((d + 5)(k + 5)^2 M2^2 / (L D)^2)``.

    Quadratic growth in k with a ``d + 5`` dimension factor, as in the
    convex-case schedule of the Gaussian-smoothing Frank-Wolfe method; the
    problem-dependent constant is taken from the same ``M2 / (L D)`` ratio
    the sliding schedule uses.
    """
    scale = (d + 5) * M2**2 / (L * D) ** 2

    def batch(k: int) -> int:
        return max(1, math.ceil(round(scale * (k + 5) ** 2, 9)))

    return batch


def forward_difference_gradient(oracle, x, gamma, batch, dir_stream, xi_stream, directions="gaussian"):
    """Forward-difference estimate at ``x`` using ``2 * batch`` queries."""
    x = np.asarray(x, dtype=float)
    d = x.shape[0]
    if directions == "gaussian":
        U = as_generator(dir_stream).standard_normal((batch, d))
        factor = 1.0
    elif directions == "sphere":
        U = sample_sphere(dir_stream, d, batch)
        factor = float(d)
    else:
        raise ValueError(f"unknown direction distribution {directions!r}")
    xi = oracle.sample_xi(as_generator(xi_stream), batch)
    X = np.concatenate([x + gamma * U, np.broadcast_to(x, (batch, d))])
    XI = None if xi is None else np.concatenate([xi, xi])
    values = oracle.evaluate_batch(X, XI)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise NumericError(f"oracle returned a non-finite value for direction index {int(bad[0]) % batch}")
    diffs = values[:batch] - values[batch:]
    return factor * (diffs @ U) / (gamma * batch)


def zscg(
    oracle: BlackBoxOracle,
    feasible_set: FeasibleSet,
    x0,
    n_iter: int | None = None,
    budget: int | None = None,
    streams: Streams | None = None,
    *,
    batch: int | Callable[[int], int] = 100,
    gamma: float = 1e-3,
    step: tuple[float, float] = (2.0, 2.0),
    directions: str = "gaussian",
    f_star: float | None = None,
    objective=None,
    check_feasibility: bool = False,
) -> SolverResult:
    """Run the baseline; ``batch`` is a fixed size or a function of ``k``.

    ``step = (a, s)`` gives ``a_k = a / (k + s)``.  Budget semantics match
    :func:`zo_scgs`.
    """
    if n_iter is None and budget is None:
        raise ValueError("need n_iter, budget or both")
    batch_of = batch if callable(batch) else (lambda k, b=int(batch): b)
    if not callable(batch) and batch < 1:
        raise ValueError(f"fixed batch must be >= 1, got {batch}")
    x = np.asarray(x0, dtype=float).copy()
    if not feasible_set.contains(x, FEAS_TOL):
        raise InfeasibleError("starting point is not in the feasible set")
    streams = streams if streams is not None else Streams.from_seed(0)
    report = _reporter(oracle, objective, f_star)

    label = "zscg " + ("theory" if callable(batch) else f"fixed {batch}")
    trace = RunTrace(method="zscg", label=label)
    trace.append(0, 0, 0, 0, *report(x))
    used = 0
    stop = "iterations"
    k = 0
    while n_iter is None or k < n_iter:
        k += 1
        B = batch_of(k)
        if budget is not None and 2 * (used + B) > budget:
            if k == 1:
                raise BudgetError(
                    f"budget of {budget} evaluations cannot cover the first batch "
                    f"({B} directions = {2 * B} evaluations)"
                )
            stop = "budget"
            break
        g = forward_difference_gradient(oracle, x, gamma, B, streams.directions, streams.xi, directions)
        v = feasible_set.lmo(g)
        a = step_size(k, *step)
        x = (1.0 - a) * x + a * v
        used += B
        if check_feasibility and not feasible_set.contains(x, FEAS_TOL):
            raise InfeasibleError(f"iterate x_{k} left the feasible set")
        trace.append(k, used, 2 * used, k, *report(x))
    return SolverResult(x, trace, stop)
