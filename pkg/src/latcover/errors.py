"""Exception types shared across the package."""


class ConstraintError(ValueError):
    """Raised when an input object violates its construction invariants."""


class DomainError(ValueError):
    """Raised when an operation is called outside its numerical domain."""
