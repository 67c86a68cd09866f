"""Exception hierarchy. The CLI maps these onto exit codes."""
from typing import Optional, Tuple


class SetFamError(Exception):
    pass


class UsageError(SetFamError, ValueError):
    """A precondition or parameter was violated by the caller."""


class DomainError(UsageError):
    """A numeric argument lies outside the function's domain."""


class ValidationError(UsageError):
    """User-supplied data breaks a theorem's hypothesis."""

    def __init__(self, message: str, pair: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


class FeasibilityError(SetFamError, RuntimeError):
    """An exact computation would exceed its enumeration cap."""

    def __init__(self, message: str, cap: int, size: int):
        super().__init__(message)
        self.cap = cap
        self.size = size
