"""Feasible sets with closed-form linear minimization oracles.

Every set here has an O(d) (or O(d log d) for membership) LMO and an exact
diameter.  Ties in the LMO are broken towards the lowest coordinate index
so that runs are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

__all__ = ["FeasibleSet", "Simplex", "L1Ball", "L2Ball", "Box", "DiameterReport", "lmo", "contains", "diameter"]


@dataclass(frozen=True)
class DiameterReport:
    p: int
    value: float


def _simplex_projection(y: np.ndarray, radius: float = 1.0) -> np.ndarray:
    # Sort-based Euclidean projection onto {x >= 0, sum x = radius}; used
    # only to measure distance in `contains`, never by the solvers.
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - radius
    idx = np.arange(1, y.size + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(y - theta, 0.0)


class FeasibleSet:
    """Convex compact set in R^d."""

    kind: str = ""

    def __init__(self, dim: int):
        if int(dim) < 1:
            raise DimensionError(f"feasible set needs dimension >= 1, got {dim}")
        self.dim = int(dim)

    def _vector(self, g) -> np.ndarray:
        g = np.asarray(g, dtype=float)
        if g.shape != (self.dim,):
            raise DimensionError(f"expected a vector of length {self.dim}, got shape {g.shape}")
        return g

    def lmo(self, g) -> np.ndarray:
        raise NotImplementedError

    def distance(self, x) -> float:
        raise NotImplementedError

    def contains(self, x, tol: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,) or not np.all(np.isfinite(x)):
            return False
        return self.distance(x) <= tol

    def diameter(self, p: int) -> DiameterReport:
        raise NotImplementedError

    def vertex(self) -> np.ndarray:
        """A deterministic starting point inside the set."""
        return self.lmo(np.zeros(self.dim))

    def random_point(self, generator: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def _check_p(self, p):
        if p not in (1, 2):
            raise ValueError(f"diameter supports p in {{1, 2}}, got {p}")


class Simplex(FeasibleSet):
    """Probability simplex ``{x >= 0, sum x = 1}``."""

    kind = "simplex"

    def lmo(self, g):
        g = self._vector(g)
        v = np.zeros(self.dim)
        v[int(np.argmin(g))] = 1.0
        return v

    def distance(self, x):
        return float(np.linalg.norm(x - _simplex_projection(x)))

    def diameter(self, p):
        self._check_p(p)
        if self.dim == 1:
            return DiameterReport(p, 0.0)
        return DiameterReport(p, 2.0 if p == 1 else math.sqrt(2.0))

    def random_point(self, generator):
        return generator.dirichlet(np.ones(self.dim))

    def __repr__(self):
        return f"Simplex(dim={self.dim})"


class L1Ball(FeasibleSet):
    kind = "l1_ball"

    def __init__(self, dim, radius=1.0):
        super().__init__(dim)
        if not radius > 0:
            raise ValueError("radius must be positive")
        self.radius = float(radius)

    def lmo(self, g):
        g = self._vector(g)
        i = int(np.argmax(np.abs(g)))
        v = np.zeros(self.dim)
        v[i] = -self.radius if g[i] > 0 else self.radius
        return v

    def distance(self, x):
        if np.abs(x).sum() <= self.radius:
            return 0.0
        proj = np.sign(x) * _simplex_projection(np.abs(x), self.radius)
        return float(np.linalg.norm(x - proj))

    def diameter(self, p):
        self._check_p(p)
        return DiameterReport(p, 2.0 * self.radius)

    def random_point(self, generator):
        w = generator.dirichlet(np.ones(self.dim + 1))[: self.dim]
        return self.radius * w * generator.choice([-1.0, 1.0], size=self.dim)

    def __repr__(self):
        return f"L1Ball(dim={self.dim}, radius={self.radius})"


class L2Ball(FeasibleSet):
    kind = "l2_ball"

    def __init__(self, dim, radius=1.0):
        super().__init__(dim)
        if not radius > 0:
            raise ValueError("radius must be positive")
        self.radius = float(radius)

    def lmo(self, g):
        g = self._vector(g)
        norm = np.linalg.norm(g)
        if norm == 0.0:
            v = np.zeros(self.dim)
            v[0] = self.radius
            return v
        return -self.radius * g / norm

    def distance(self, x):
        return max(float(np.linalg.norm(x)) - self.radius, 0.0)

    def diameter(self, p):
        self._check_p(p)
        # ||x||_1 <= sqrt(d) ||x||_2, attained by +-r(1,...,1)/sqrt(d).
        scale = math.sqrt(self.dim) if p == 1 else 1.0
        return DiameterReport(p, 2.0 * self.radius * scale)

    def random_point(self, generator):
        e = generator.standard_normal(self.dim)
        e /= np.linalg.norm(e)
        return self.radius * generator.uniform() ** (1.0 / self.dim) * e

    def __repr__(self):
        return f"L2Ball(dim={self.dim}, radius={self.radius})"


class Box(FeasibleSet):
    """Axis-aligned box ``lo <= x <= hi``; bounds may be scalars or vectors."""

    kind = "box"

    def __init__(self, dim, lo=0.0, hi=1.0):
        super().__init__(dim)
        self.lo = np.broadcast_to(np.asarray(lo, dtype=float), (self.dim,)).copy()
        self.hi = np.broadcast_to(np.asarray(hi, dtype=float), (self.dim,)).copy()
        if np.any(self.lo > self.hi):
            raise ValueError("box needs lo <= hi in every coordinate")

    def lmo(self, g):
        g = self._vector(g)
        # zero components go to the lower bound
        return np.where(g < 0, self.hi, self.lo)

    def distance(self, x):
        return float(np.linalg.norm(x - np.clip(x, self.lo, self.hi)))

    def diameter(self, p):
        self._check_p(p)
        width = self.hi - self.lo
        return DiameterReport(p, float(width.sum() if p == 1 else np.linalg.norm(width)))

    def random_point(self, generator):
        return generator.uniform(self.lo, self.hi)

    def __repr__(self):
        return f"Box(dim={self.dim}, lo={self.lo.tolist()}, hi={self.hi.tolist()})"


def lmo(feasible_set: FeasibleSet, g) -> np.ndarray:
    return feasible_set.lmo(g)


def contains(feasible_set: FeasibleSet, x, tol: float = 0.0) -> bool:
    return feasible_set.contains(x, tol)


def diameter(feasible_set: FeasibleSet, p: int) -> DiameterReport:
    return feasible_set.diameter(p)
