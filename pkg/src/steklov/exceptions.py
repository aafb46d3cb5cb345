"""Exception types shared across the package."""


class SteklovError(Exception):
    """Base class for all package errors."""


class DomainError(SteklovError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class NoCrossingError(SteklovError, ValueError):
    """The two requested branches never intersect on (0, inf)."""


class UnsupportedBranchError(SteklovError, ValueError):
    """The requested branch does not exist on the given surface."""


class ParameterError(SteklovError, ValueError):
    """Invalid family parameters (parity or ordering rules violated)."""


class ConstraintError(SteklovError, ValueError):
    """A metric variation violates the fixed-boundary-length constraint."""
