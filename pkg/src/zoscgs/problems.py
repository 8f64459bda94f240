"""Seeded test problems with known minimizers and Lipschitz constants.

Instances are regenerated from ``(kind, dim, seed, ...)``; the plain-text
record written by :meth:`to_record` carries exactly those parameters plus
``x_star`` as a checksum, never the dense matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .oracle import Objective
from .sampling import PROBLEM, SeededStream
from .sets import FeasibleSet, Simplex

__all__ = [
    "ProblemConstants",
    "QuadraticSimplexInstance",
    "NonsmoothInstance",
    "gen_quadratic_simplex",
    "gen_nonsmooth",
    "load_instance",
]


@dataclass(frozen=True)
class ProblemConstants:
    """Upper bounds valid on the enlarged set ``Q + gamma * B_2``.

    ``M`` is the Lipschitz constant w.r.t. the p-norm, ``M2`` w.r.t. the
    l2-norm, ``L`` the gradient Lipschitz constant (q-norm vs p-norm, None for
    non-smooth problems) and ``D`` the p-norm diameter of ``Q``.
    """

    M: float
    M2: float
    L: float | None
    D: float
    p: int


def _fmt_vec(v) -> str:
    return ",".join(format(float(t), ".17g") for t in v)


def _parse_record(text: str) -> dict[str, str]:
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"malformed record line: {raw!r}")
        out[key.strip()] = value.strip()
    return out


def _xi_draw(generator, n, d, scale):
    if scale == 0.0:
        return None
    return generator.uniform(-scale, scale, size=(n, d))


class _StochasticLinear(Objective):
    """Adds ``<xi, x>`` with ``xi`` uniform on ``[-s, s]^d``; zero mean."""

    xi_scale: float = 0.0

    def sample_xi(self, generator, n):
        return _xi_draw(generator, n, self.dim, self.xi_scale)

    def _perturb(self, X, XI):
        return 0.0 if XI is None else np.einsum("ij,ij->i", X, XI)

    def expected_value(self, x):
        return float(self.value(np.atleast_2d(x))[0])

    def _xi_bounds(self, p):
        # (q-norm, l2-norm) bounds on xi
        s = self.xi_scale
        return (s if p == 1 else s * math.sqrt(self.dim)), s * math.sqrt(self.dim)


class QuadraticSimplexInstance(_StochasticLinear):
    """``f(x) = 1/2 x^T A x - b^T x`` over the simplex with ``b = A x_star``.

    ``x_star`` is an interior point of the simplex, so it is the
    unconstrained minimizer too and ``f_star = -1/2 x_star^T A x_star``.
    """

    kind = "quadratic_simplex"

    def __init__(self, A, x_star, seed=None, lambda_min=None, lambda_max=None, xi_scale=0.0):
        A = np.asarray(A, dtype=float)
        x_star = np.asarray(x_star, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] != x_star.shape[0]:
            raise DimensionError("A must be square and match x_star")
        self.A = A
        self.dim = A.shape[0]
        self.x_star = x_star
        self.b = A @ x_star
        self.f_star = float(-0.5 * x_star @ self.b)
        eig = np.linalg.eigvalsh(A)
        self.eigenvalues = eig
        self.lambda_min = float(eig[0]) if lambda_min is None else float(lambda_min)
        self.lambda_max = float(eig[-1]) if lambda_max is None else float(lambda_max)
        self.seed = seed
        self.xi_scale = float(xi_scale)
        self.feasible_set: FeasibleSet = Simplex(self.dim)

    def value(self, X, XI=None):
        X = np.atleast_2d(X)
        return 0.5 * np.einsum("ij,ij->i", X @ self.A, X) - X @ self.b + self._perturb(X, XI)

    def gradient(self, x):
        return self.A @ x - self.b

    def constants(self, p: int = 2, gamma: float = 0.0) -> ProblemConstants:
        # sup of a convex function over Q + gamma*B_2 is at most its max over
        # the simplex vertices plus gamma times the operator bound
        R = self.A - self.b[None, :]  # row i: A e_i - b (A symmetric)
        xi_q, xi_2 = self._xi_bounds(p)
        M2 = float(np.linalg.norm(R, axis=1).max()) + gamma * self.lambda_max + xi_2
        if p == 1:
            M = float(np.abs(R).max()) + gamma * float(np.linalg.norm(self.A, axis=1).max()) + xi_q
            L = float(np.abs(self.A).max())
        else:
            M = M2
            L = self.lambda_max
        return ProblemConstants(M, M2, L, self.feasible_set.diameter(p).value, p)

    def to_record(self) -> str:
        if self.seed is None:
            raise ValueError("only seeded instances can be serialized")
        return (
            f"kind = {self.kind}\n"
            f"dim = {self.dim}\n"
            f"seed = {self.seed}\n"
            f"lambda_min = {self.lambda_min!r}\n"
            f"lambda_max = {self.lambda_max!r}\n"
            f"xi_scale = {self.xi_scale!r}\n"
            f"x_star = {_fmt_vec(self.x_star)}\n"
        )


def gen_quadratic_simplex(d: int, lambda_min: float = 1.0, lambda_max: float = 10.0, seed: int = 0, xi_scale: float = 0.0):
    """Random SPD quadratic on the simplex.

    ``A = Q diag(lam) Q^T`` with ``Q`` Haar-orthogonal (sign-fixed QR of a
    Gaussian matrix) and ``lam`` uniform on ``[lambda_min, lambda_max]``;
    ``x_star`` is a flat Dirichlet draw.
    """
    if d < 2:
        raise DimensionError(f"quadratic instances need d >= 2, got {d}")
    if not (0 < lambda_min <= lambda_max):
        raise ValueError(f"need 0 < lambda_min <= lambda_max, got [{lambda_min}, {lambda_max}]")
    gen = SeededStream(seed, PROBLEM).generator
    Qm, R = np.linalg.qr(gen.standard_normal((d, d)))
    Qm = Qm * np.sign(np.diag(R))
    lam = gen.uniform(lambda_min, lambda_max, size=d)
    A = (Qm * lam) @ Qm.T
    A = 0.5 * (A + A.T)
    x_star = gen.dirichlet(np.ones(d))
    return QuadraticSimplexInstance(A, x_star, seed=seed, lambda_min=lambda_min, lambda_max=lambda_max, xi_scale=xi_scale)


class NonsmoothInstance(_StochasticLinear):
    """Non-smooth convex test problems with a known minimum.

    ``l1_distance``: ``f(x) = ||x - x_star||_1``.
    ``max_affine``: ``f(x) = max_j <a_j, x> + c_j`` with ``c_j = -<a_j, x_star>``
    and the ``a_j`` summing to zero, so every feasible direction raises some
    piece and ``f >= 0 = f(x_star)`` on all of R^d.  With a single piece the
    problem is linear and its minimizer is a vertex given by the LMO.
    """

    KINDS = ("l1_distance", "max_affine")

    def __init__(self, kind, x_star, feasible_set, slopes=None, offsets=None, seed=None, xi_scale=0.0):
        if kind not in self.KINDS:
            raise ValueError(f"unknown non-smooth kind {kind!r}; expected one of {self.KINDS}")
        self.kind = kind
        self.feasible_set = feasible_set
        self.dim = feasible_set.dim
        self.x_star = np.asarray(x_star, dtype=float)
        self.slopes = None if slopes is None else np.atleast_2d(np.asarray(slopes, dtype=float))
        self.offsets = None if offsets is None else np.atleast_1d(np.asarray(offsets, dtype=float))
        self.seed = seed
        self.xi_scale = float(xi_scale)
        self.f_star = float(self._clean(self.x_star[None, :])[0])

    def _clean(self, X):
        if self.kind == "l1_distance":
            return np.abs(X - self.x_star).sum(axis=1)
        return (X @ self.slopes.T + self.offsets).max(axis=1)

    def value(self, X, XI=None):
        X = np.atleast_2d(X)
        return self._clean(X) + self._perturb(X, XI)

    def constants(self, p: int = 2, gamma: float = 0.0) -> ProblemConstants:
        xi_q, xi_2 = self._xi_bounds(p)
        if self.kind == "l1_distance":
            Mq, M2 = 1.0, math.sqrt(self.dim)
        else:
            Mq = float(np.abs(self.slopes).max())
            M2 = float(np.linalg.norm(self.slopes, axis=1).max())
        M2 += xi_2
        M = (Mq + xi_q) if p == 1 else M2
        return ProblemConstants(M, M2, None, self.feasible_set.diameter(p).value, p)

    def to_record(self) -> str:
        if self.seed is None:
            raise ValueError("only seeded instances can be serialized")
        pieces = 0 if self.slopes is None else self.slopes.shape[0]
        return (
            f"kind = {self.kind}\n"
            f"dim = {self.dim}\n"
            f"seed = {self.seed}\n"
            f"pieces = {pieces}\n"
            f"xi_scale = {self.xi_scale!r}\n"
            f"x_star = {_fmt_vec(self.x_star)}\n"
        )


def gen_nonsmooth(kind: str, d: int, seed: int = 0, pieces: int | None = None, xi_scale: float = 0.0, feasible_set=None):
    """Seeded non-smooth instance on ``feasible_set`` (default: the simplex)."""
    if kind not in NonsmoothInstance.KINDS:
        raise ValueError(f"unknown non-smooth kind {kind!r}; expected one of {NonsmoothInstance.KINDS}")
    Q = feasible_set if feasible_set is not None else Simplex(d)
    if Q.dim != d:
        raise DimensionError("feasible set dimension does not match d")
    gen = SeededStream(seed, PROBLEM).generator
    anchor = Q.random_point(gen)
    if kind == "l1_distance":
        return NonsmoothInstance(kind, anchor, Q, seed=seed, xi_scale=xi_scale)
    m = d + 1 if pieces is None else int(pieces)
    if m < 1:
        raise ValueError("max_affine needs at least one piece")
    slopes = gen.standard_normal((m, d))
    if m == 1:
        x_star = Q.lmo(slopes[0])
        return NonsmoothInstance(kind, x_star, Q, slopes, np.zeros(1), seed=seed, xi_scale=xi_scale)
    slopes[-1] = -slopes[:-1].sum(axis=0)
    offsets = -slopes @ anchor
    return NonsmoothInstance(kind, anchor, Q, slopes, offsets, seed=seed, xi_scale=xi_scale)


def load_instance(text: str):
    """Regenerate an instance from its record and check it matches."""
    rec = _parse_record(text)
    kind = rec.get("kind")
    d, seed = int(rec["dim"]), int(rec["seed"])
    xi_scale = float(rec.get("xi_scale", 0.0))
    if kind == QuadraticSimplexInstance.kind:
        inst = gen_quadratic_simplex(d, float(rec["lambda_min"]), float(rec["lambda_max"]), seed, xi_scale)
    elif kind in NonsmoothInstance.KINDS:
        pieces = int(rec.get("pieces", 0)) or None
        inst = gen_nonsmooth(kind, d, seed, pieces=pieces, xi_scale=xi_scale)
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    if "x_star" in rec:
        recorded = np.array([float(t) for t in rec["x_star"].split(",")])
        if not np.array_equal(recorded, inst.x_star):
            raise ValueError("regenerated instance does not match the recorded x_star")
    return inst
