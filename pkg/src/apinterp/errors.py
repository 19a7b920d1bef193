"""Exception taxonomy shared by all modules."""


class ApInterpError(Exception):
    """Base class for everything this package raises on purpose."""


class DomainError(ApInterpError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class TabulatedRangeError(DomainError):
    """A tabulated profile was evaluated outside its knot range."""


class NumericError(ApInterpError, RuntimeError):
    """A quadrature or iteration failed to reach its tolerance."""


class ConstructionError(NumericError):
    """An explicit construction (partition marching, radius fitting) failed."""


class InvariantViolation(ApInterpError):
    """Internal data broke a structural invariant (overlap, coincident points)."""


class InputError(ApInterpError, ValueError):
    """A configuration or data file could not be understood."""
