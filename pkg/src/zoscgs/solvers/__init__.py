from .cg import CGResult, cg_procedure, default_max_inner
from .schedules import Schedule, ScheduleParams, schedule
from .sliding import zo_scgs
from .trace import CSV_HEADER, RunTrace, SolverResult, TraceRow
from .zscg import forward_difference_gradient, step_size, zscg, zscg_theory_batch

__all__ = [
    "CGResult",
    "cg_procedure",
    "default_max_inner",
    "Schedule",
    "ScheduleParams",
    "schedule",
    "zo_scgs",
    "CSV_HEADER",
    "RunTrace",
    "SolverResult",
    "TraceRow",
    "forward_difference_gradient",
    "step_size",
    "zscg",
    "zscg_theory_batch",
]
