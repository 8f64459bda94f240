"""Stochastic zero-order oracle with bounded deterministic noise.

The oracle returns ``f(x, xi) + delta(x)`` where ``xi`` is drawn by the caller
from a seeded stream and ``delta`` is a deterministic bounded perturbation.
Every single function query increments the call counter by one.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionError, DomainError

__all__ = [
    "Objective",
    "FunctionObjective",
    "NoiseModel",
    "OracleValue",
    "BlackBoxOracle",
    "evaluate",
    "reset_counter",
]

NOISE_KINDS = ("none", "constant", "sign_of_first_coordinate", "bounded_sine")


class Objective:
    """Base class for ``f(x, xi)``.

    Subclasses implement :meth:`value`, vectorized over the rows of ``X``.
    ``xi`` is ``None`` for deterministic objectives; otherwise a row of
    ``XI`` is the stochastic draw paired with the matching row of ``X``.
    """

    dim: int

    def value(self, X: np.ndarray, XI: np.ndarray | None = None) -> np.ndarray:
        raise NotImplementedError

    def expected_value(self, x: np.ndarray) -> float:
        """``E_xi f(x, xi)``; used for reporting, never counted as a query."""
        return float(self.value(np.atleast_2d(x))[0])

    def sample_xi(self, generator: np.random.Generator, n: int) -> np.ndarray | None:
        return None


class FunctionObjective(Objective):
    """Wrap a plain deterministic function ``f(x) -> float``.

    ``fn`` receives one point at a time unless ``vectorized`` is set, in which
    case it receives the ``(n, d)`` matrix and must return ``n`` values.
    """

    def __init__(self, fn: Callable, dim: int, vectorized: bool = False):
        if dim < 1:
            raise DimensionError(f"dimension must be >= 1, got {dim}")
        self.fn = fn
        self.dim = int(dim)
        self.vectorized = vectorized

    def value(self, X, XI=None):
        X = np.atleast_2d(X)
        if self.vectorized:
            return np.asarray(self.fn(X), dtype=float).reshape(X.shape[0])
        return np.array([float(self.fn(row)) for row in X])


@dataclass(frozen=True)
class NoiseModel:
    """Deterministic adversarial noise with ``|delta(x)| <= delta``.

    ``scale`` sets the oscillation period of ``bounded_sine``:
    ``delta(x) = delta * sin(sum(x) / scale)``.  Using the smoothing radius
    as the scale makes the noise vary on the estimator's own length scale.
    """

    kind: str = "none"
    delta: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; expected one of {NOISE_KINDS}")
        if not self.delta >= 0:
            raise ValueError(f"noise bound must be >= 0, got {self.delta}")
        if not self.scale > 0:
            raise ValueError(f"noise scale must be > 0, got {self.scale}")

    def __call__(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(X)
        n = X.shape[0]
        if self.kind == "none" or self.delta == 0.0:
            return np.zeros(n)
        if self.kind == "constant":
            return np.full(n, self.delta)
        if self.kind == "sign_of_first_coordinate":
            return self.delta * np.sign(X[:, 0])
        return self.delta * np.sin(X.sum(axis=1) / self.scale)


@dataclass(frozen=True)
class OracleValue:
    value: float
    noise_applied: float


class BlackBoxOracle:
    """Counting zero-order oracle around an :class:`Objective`.

    The counter is guarded by a lock so that batches may be evaluated from
    several threads; each row of a batch counts as one query.
    """

    def __init__(self, objective: Objective, noise: NoiseModel | None = None):
        self.objective = objective
        self.noise = noise if noise is not None else NoiseModel()
        self.dim = objective.dim
        self._evaluations = 0
        self._lock = threading.Lock()

    @property
    def evaluations(self) -> int:
        return self._evaluations

    def reset_counter(self) -> None:
        with self._lock:
            self._evaluations = 0

    def _check(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise DimensionError(f"expected points of dimension {self.dim}, got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise DomainError("query point has non-finite coordinates")
        return X

    def evaluate_batch(self, X: np.ndarray, XI: np.ndarray | None = None) -> np.ndarray:
        """Noisy values at every row of ``X``; counts ``len(X)`` queries."""
        X = self._check(X)
        values = self.objective.value(X, XI) + self.noise(X)
        with self._lock:
            self._evaluations += X.shape[0]
        return values

    def evaluate(self, x: np.ndarray, xi: np.ndarray | None = None) -> OracleValue:
        X = self._check(x)
        if X.shape[0] != 1:
            raise DimensionError("evaluate takes a single point; use evaluate_batch")
        XI = None if xi is None else np.atleast_2d(xi)
        clean = float(self.objective.value(X, XI)[0])
        delta = float(self.noise(X)[0])
        with self._lock:
            self._evaluations += 1
        return OracleValue(clean + delta, delta)

    def sample_xi(self, generator: np.random.Generator, n: int) -> np.ndarray | None:
        return self.objective.sample_xi(generator, n)


def evaluate(oracle: BlackBoxOracle, x, xi=None) -> OracleValue:
    return oracle.evaluate(x, xi)


def reset_counter(oracle: BlackBoxOracle) -> None:
    oracle.reset_counter()
