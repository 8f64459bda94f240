"""Exception types raised across the package."""


class ZOSCGSError(Exception):
    """Base class for all package errors."""


class DimensionError(ZOSCGSError, ValueError):
    """A vector or set has the wrong (or zero) dimension."""


class DomainError(ZOSCGSError, ValueError):
    """A query point is outside the oracle's domain (e.g. non-finite)."""


class NumericError(ZOSCGSError, ArithmeticError):
    """An oracle or estimator produced a non-finite value."""


class BudgetError(ZOSCGSError, RuntimeError):
    """The evaluation budget cannot cover the requested work."""


class InfeasibleError(ZOSCGSError, ValueError):
    """A point that must lie in the feasible set does not."""


class ConfigError(ZOSCGSError, ValueError):
    """Invalid experiment configuration."""
