"""Projection-free zero-order convex optimization.

Conditional gradient sliding driven by two-point l2-randomized gradient
estimates (ZO-SCGS), a forward-difference stochastic Frank-Wolfe baseline
(ZSCG), seeded test problems and an experiment runner.

    >>> import zoscgs
    >>> inst = zoscgs.gen_quadratic_simplex(10, seed=1)
    >>> oracle = zoscgs.BlackBoxOracle(inst)
    >>> c = inst.constants(p=2)
    >>> params = zoscgs.ScheduleParams("smooth", 0.1, c.M, c.M2, c.D, 2, 10, L=c.L)
    >>> res = zoscgs.zo_scgs(oracle, inst.feasible_set, params, inst.feasible_set.vertex(),
    ...                      budget=10_000, batch=10, f_star=inst.f_star)
"""

from .errors import (
    BudgetError,
    ConfigError,
    DimensionError,
    DomainError,
    InfeasibleError,
    NumericError,
    ZOSCGSError,
)
from .oracle import BlackBoxOracle, FunctionObjective, NoiseModel, Objective, OracleValue, evaluate, reset_counter
from .problems import (
    NonsmoothInstance,
    ProblemConstants,
    QuadraticSimplexInstance,
    gen_nonsmooth,
    gen_quadratic_simplex,
    load_instance,
)
from .sampling import SeededStream, Streams, sample_ball, sample_sphere
from .sets import Box, DiameterReport, FeasibleSet, L1Ball, L2Ball, Simplex, contains, diameter, lmo
from .smoothing import (
    GradientEstimate,
    SmoothingConfig,
    SmoothingConstants,
    estimate_gradient,
    single_direction_estimates,
    smoothed_value,
    theoretical_constants,
)
from .solvers import (
    CGResult,
    RunTrace,
    Schedule,
    ScheduleParams,
    SolverResult,
    cg_procedure,
    schedule,
    zo_scgs,
    zscg,
    zscg_theory_batch,
)

__version__ = "0.1.0"
