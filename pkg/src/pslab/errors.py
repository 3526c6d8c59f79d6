"""Exception types shared across the package.

The distinction between DomainError and PreconditionError matters for the
checkers: a DomainError means the caller handed us something outside the
function's domain (bad limit, non-prime where a prime is required), while a
PreconditionError means the *hypothesis* of a checked inequality fails, which
is different from the check returning False (False signals a bug in the
mathematics or in this package, and the suites treat it as such).
"""


class DomainError(ValueError):
    """Argument outside the documented domain."""


class PreconditionError(ValueError):
    """Hypothesis of a checked statement is violated by the instance."""


class IntegrityError(RuntimeError):
    """Persisted state (checkpoint, dump) is corrupt or inconsistent."""


class BoundaryAmbiguityError(ValueError):
    """A float comparison lands inside the guard band around a half-open
    boundary; the caller must decide, we refuse to guess."""
