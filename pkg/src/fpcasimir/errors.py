"""Exception types shared across the package."""


class FpcasimirError(Exception):
    """Base class for all package errors."""


class DomainError(FpcasimirError, ValueError):
    """An argument lies outside the physically meaningful domain."""


class ValidationError(FpcasimirError, ValueError):
    """A database entry or run configuration failed validation.

    The message names the offending material / config field and the rule
    that was violated.
    """


class TopologyError(FpcasimirError, ValueError):
    """A layer stack has a shape the requested operation does not support."""


class ConvergenceError(FpcasimirError, RuntimeError):
    """A numerical procedure did not converge within its budget.

    Carries the best available partial estimate in ``partial`` so callers
    can still inspect how far the computation got.
    """

    def __init__(self, message, partial=None, diagnostics=None):
        super().__init__(message)
        self.partial = partial
        self.diagnostics = diagnostics or {}
