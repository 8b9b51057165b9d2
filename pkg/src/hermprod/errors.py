"""Exception types raised by hermprod."""


class HermprodError(Exception):
    """Base class for all library errors."""


class DomainError(HermprodError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ResourceError(HermprodError):
    """A requested enumeration exceeds the configured budget."""


class ConvergenceError(HermprodError, ArithmeticError):
    """An iterative method failed to reach its tolerance."""
