"""Exception hierarchy shared across the package."""


class ReadkError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ReadkError, ValueError):
    """An object violates a structural invariant (bad probabilities, bad table, ...)."""


class DomainError(ReadkError, ValueError):
    """Arguments are outside the domain an operation is defined on."""


class ResourceError(ReadkError, RuntimeError):
    """An enumeration would exceed the configured guard."""


class AuditError(ReadkError, AssertionError):
    """A numeric inequality that must hold was violated beyond tolerance."""
