"""Exception taxonomy shared by all modules."""


class GrushinError(Exception):
    """Base class for toolkit errors."""


class DomainError(GrushinError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class StripConditionError(DomainError):
    """A Schrödinger-kernel query violates the horizontal-strip condition |t - t1| < n|s|."""


class ParameterError(GrushinError, ValueError):
    """A numerical parameter (order, resolution, exponent) is invalid."""


class ConfigurationError(ParameterError):
    """An experiment or quadrature configuration cannot be honoured."""


class CoverageError(GrushinError, ValueError):
    """A requested region is not covered by the sampled grid."""


class EvaluationError(GrushinError, ArithmeticError):
    """A field produced a non-finite sample; the message names the grid point."""
