"""Exception types shared by every module and mapped to CLI exit codes."""


class DomainError(ValueError):
    """Invalid input: malformed block, mismatched dimension, dependent set, ..."""


class ResourceError(RuntimeError):
    """An instance exceeds a configured size budget."""

    def __init__(self, message, *, size=None, budget=None, payload=None):
        super().__init__(message)
        self.size = size
        self.budget = budget
        self.payload = payload


class VerificationError(AssertionError):
    """A certificate or invariant failed to re-verify."""
