"""Inner conditional-gradient procedure of the sliding scheme.

Approximately solves ``min_u <g0, u> + eta/2 ||u - u0||^2`` over the feasible
set with Frank-Wolfe steps and exact line search, stopping once the
Frank-Wolfe gap drops to ``beta``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NumericError
from ..sets import FeasibleSet

__all__ = ["CGResult", "cg_procedure", "default_max_inner"]


def default_max_inner(d: int) -> int:
    return 10 * d


@dataclass(frozen=True)
class CGResult:
    u: np.ndarray
    inner_iters: int
    lmo_calls: int
    truncated: bool
    gap: float


def cg_procedure(
    g0: np.ndarray,
    u0: np.ndarray,
    eta: float,
    beta: float,
    feasible_set: FeasibleSet,
    max_inner: int | None = None,
) -> CGResult:
    """Run the inner loop from ``u0``.

    Returns at iteration ``t`` with ``inner_iters = t`` and ``lmo_calls = t + 1``
    when the gap test passes.  After ``max_inner`` updates without passing,
    returns the last iterate with ``truncated=True`` and ``lmo_calls = max_inner``.
    """
    g0 = np.asarray(g0, dtype=float)
    if not np.all(np.isfinite(g0)):
        raise NumericError("inner procedure received a non-finite gradient")
    if not (eta > 0 and beta > 0):
        raise ValueError(f"eta and beta must be positive, got eta={eta}, beta={beta}")
    if max_inner is None:
        max_inner = default_max_inner(g0.shape[0])
    u0 = np.asarray(u0, dtype=float)
    u = u0.copy()
    g = g0.copy()
    gap = np.inf
    for t in range(max_inner):
        v = feasible_set.lmo(g)
        w = u - v
        gap = float(g @ w)
        if gap <= beta:
            return CGResult(u, t, t + 1, False, gap)
        # ||u - v||^2 > 0 here since the gap is positive
        alpha = min(gap / (eta * float(w @ w)), 1.0)
        u = u - alpha * w
        g = g0 + eta * (u - u0)
    return CGResult(u, max_inner, max_inner, True, gap)
