"""Step-size, learning-rate, accuracy and batch-size schedules."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..smoothing import conjugate, geometry_factor

__all__ = ["ScheduleParams", "Schedule", "schedule"]

REGIMES = ("nonsmooth", "smooth")


@dataclass(frozen=True)
class ScheduleParams:
    """Problem constants feeding the schedules.

    In the non-smooth regime the gradient Lipschitz constant of the smoothed
    objective is derived as ``2 sqrt(d) M M2 / epsilon`` and must not be
    passed in; in the smooth regime ``L`` is required.
    """

    regime: str
    epsilon: float
    M: float
    M2: float
    D: float
    p: int
    d: int
    L: float | None = None

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError(f"regime must be one of {REGIMES}, got {self.regime!r}")
        conjugate(self.p)
        for name in ("epsilon", "M", "M2", "D"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.regime == "nonsmooth" and self.L is not None:
            raise ValueError("L is derived in the nonsmooth regime and must not be supplied")
        if self.regime == "smooth" and not (self.L is not None and self.L > 0):
            raise ValueError("smooth regime needs a positive L")

    @property
    def lipschitz_gradient(self) -> float:
        if self.regime == "nonsmooth":
            return 2.0 * math.sqrt(self.d) * self.M * self.M2 / self.epsilon
        return float(self.L)

    @property
    def gamma(self) -> float:
        return self.epsilon / (2.0 * self.M2)

    def rate_bound(self, k: int) -> float:
        """Expected-gap bound ``7.5 L D^2 / ((k+1)(k+2))`` after k iterations."""
        return 7.5 * self.lipschitz_gradient * self.D**2 / ((k + 1) * (k + 2))


@dataclass(frozen=True)
class Schedule:
    zeta: float
    eta: float
    beta: float
    batch: int


def schedule(params: ScheduleParams, k: int) -> Schedule:
    if k < 1:
        raise ValueError(f"iteration index must be >= 1, got {k}")
    d, p, D = params.d, params.p, params.D
    mq = geometry_factor(p, d)
    L = params.lipschitz_gradient
    zeta = 3.0 / (k + 3)
    # nonsmooth: 4 L_fgamma/(k+3) = 8 sqrt(d) M M2 / (eps (k+3)), and likewise for beta
    eta = 4.0 * L / (k + 3)
    beta = L * D**2 / ((k + 1) * (k + 2))
    if params.regime == "nonsmooth":
        raw = mq * d ** (1.0 - 2.0 / p) * (k + 3) ** 3 * params.epsilon**2 / (params.M * D) ** 2
    else:
        raw = mq * d ** (2.0 - 2.0 / p) * params.M2**2 * (k + 3) ** 3 / (L * D) ** 2
    # round first so float noise like 64.000000000001 does not bump the ceiling
    return Schedule(zeta, eta, beta, max(1, math.ceil(round(raw, 9))))
