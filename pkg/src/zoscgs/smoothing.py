"""Randomized l2 smoothing: the smoothed objective and its two-point gradient.

``f_gamma(x) = E f(x + gamma * u)`` with ``u`` uniform in the unit ball.  Its
gradient is estimated from central differences along unit-sphere directions:

    g = (1/B) sum_i d / (2 gamma) * (f(x + gamma e_i, xi_i) - f(x - gamma e_i, xi_i)) * e_i
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NumericError
from .oracle import BlackBoxOracle
from .sampling import as_generator, sample_ball, sample_sphere

__all__ = [
    "SmoothingConfig",
    "GradientEstimate",
    "SmoothingConstants",
    "conjugate",
    "geometry_factor",
    "estimate_gradient",
    "single_direction_estimates",
    "smoothed_value",
    "theoretical_constants",
]


def conjugate(p: int) -> float:
    """Dual exponent q with 1/p + 1/q = 1."""
    if p == 1:
        return math.inf
    if p == 2:
        return 2.0
    raise ValueError(f"p must be 1 or 2, got {p}")


def geometry_factor(p: int, d: int) -> float:
    """``min{q, ln d}``."""
    return min(conjugate(p), math.log(d))


@dataclass(frozen=True)
class SmoothingConfig:
    gamma: float
    p: int = 2

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"smoothing radius must be positive, got {self.gamma}")
        conjugate(self.p)

    @property
    def q(self) -> float:
        return conjugate(self.p)

    @classmethod
    def for_accuracy(cls, epsilon: float, M2: float, p: int = 2) -> "SmoothingConfig":
        """Radius ``epsilon / (2 M2)`` used by the non-smooth schedule."""
        return cls(epsilon / (2.0 * M2), p)


@dataclass(frozen=True)
class GradientEstimate:
    g: np.ndarray
    batch: int
    oracle_calls: int


# Rows are always evaluated in chunks of this size, whatever the worker count:
# BLAS rounding of a row can depend on the shape of the block it sits in.
EVAL_CHUNK = 256


def _fan_out(oracle, X, XI, workers):
    chunks = [slice(i, i + EVAL_CHUNK) for i in range(0, X.shape[0], EVAL_CHUNK)]

    def run(sl):
        return oracle.evaluate_batch(X[sl], None if XI is None else XI[sl])

    if workers <= 1 or len(chunks) == 1:
        return np.concatenate([run(sl) for sl in chunks])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.concatenate(list(pool.map(run, chunks)))


def _central_differences(oracle, x, gamma, batch, dir_stream, xi_stream, workers):
    """Directions ``E`` and ``f(x + gamma e_i, xi_i) - f(x - gamma e_i, xi_i)``."""
    if batch < 1:
        raise ValueError(f"batch must be >= 1, got {batch}")
    d = x.shape[0]
    E = sample_sphere(dir_stream, d, batch)
    xi = oracle.sample_xi(as_generator(xi_stream), batch)
    X = np.concatenate([x + gamma * E, x - gamma * E])
    XI = None if xi is None else np.concatenate([xi, xi])
    values = _fan_out(oracle, X, XI, workers)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise NumericError(f"oracle returned a non-finite value for direction index {int(bad[0]) % batch}")
    return E, values[:batch] - values[batch:]


def estimate_gradient(
    oracle: BlackBoxOracle,
    x: np.ndarray,
    cfg: SmoothingConfig,
    batch: int,
    dir_stream,
    xi_stream,
    workers: int = 1,
) -> GradientEstimate:
    """Batched two-point estimate of the smoothed gradient at ``x``.

    All directions and stochastic draws are taken before any evaluation, and
    the reduction runs in index order, so ``workers`` never changes ``g``.
    Costs exactly ``2 * batch`` oracle queries.
    """
    x = np.asarray(x, dtype=float)
    E, diffs = _central_differences(oracle, x, cfg.gamma, batch, dir_stream, xi_stream, workers)
    g = (x.shape[0] / (2.0 * cfg.gamma)) * (diffs @ E) / batch
    return GradientEstimate(g, int(batch), 2 * int(batch))


def single_direction_estimates(
    oracle: BlackBoxOracle,
    x: np.ndarray,
    cfg: SmoothingConfig,
    n: int,
    dir_stream,
    xi_stream,
    workers: int = 1,
) -> np.ndarray:
    """``n`` independent batch-1 estimates as the rows of an ``(n, d)`` array.

    Uses the same draws, in the same order, as ``estimate_gradient`` with
    ``batch = n``; useful for variance and moment diagnostics.
    """
    x = np.asarray(x, dtype=float)
    E, diffs = _central_differences(oracle, x, cfg.gamma, n, dir_stream, xi_stream, workers)
    return (x.shape[0] / (2.0 * cfg.gamma)) * diffs[:, None] * E


def smoothed_value(
    oracle: BlackBoxOracle,
    x: np.ndarray,
    cfg: SmoothingConfig,
    samples: int,
    ball_stream,
    xi_stream,
) -> float:
    """Monte-Carlo estimate of ``f_gamma(x)`` from ``samples`` unit-ball draws."""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    x = np.asarray(x, dtype=float)
    U = sample_ball(ball_stream, x.shape[0], samples)
    xi = oracle.sample_xi(as_generator(xi_stream), samples)
    values = oracle.evaluate_batch(x + cfg.gamma * U, xi)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise NumericError(f"oracle returned a non-finite value for sample index {int(bad[0])}")
    return float(values.mean())


@dataclass(frozen=True)
class SmoothingConstants:
    L_fgamma: float
    kappa: float
    second_moment_bound: float
    sigma2_bound: float


def theoretical_constants(cfg: SmoothingConfig, d: int, M: float, M2: float, Delta: float = 0.0) -> SmoothingConstants:
    """Constants of the smoothed problem.

    * gradient Lipschitz constant ``sqrt(d) M / gamma``
    * ``kappa = sqrt(2) min{q, ln d} d^(1 - 2/p)``
    * second-moment bound ``kappa (d M2^2 + d^2 Delta^2 / (sqrt(2) gamma^2))``
    * small-noise variance bound ``2 sqrt(2) min{q, ln d} d^(2 - 2/p) M2^2``
    """
    if Delta < 0:
        raise ValueError("Delta must be >= 0")
    p, gamma = cfg.p, cfg.gamma
    mq = geometry_factor(p, d)
    kappa = math.sqrt(2.0) * mq * d ** (1.0 - 2.0 / p)
    second = kappa * (d * M2**2 + d**2 * Delta**2 / (math.sqrt(2.0) * gamma**2))
    sigma2 = 2.0 * math.sqrt(2.0) * mq * d ** (2.0 - 2.0 / p) * M2**2
    return SmoothingConstants(math.sqrt(d) * M / gamma, kappa, second, sigma2)
