"""Shared exception types."""
from __future__ import annotations


class PreconditionError(ValueError):
    """An operation was invoked outside its stated hypotheses."""


class FormatError(ValueError):
    """A graph or cover text file failed to parse."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotUniquelyColorable(PreconditionError):
    """unique_k_analysis found zero or several partitions into color classes."""

    def __init__(self, k: int, found: int):
        hint = "no partition" if found == 0 else f"{found}+ partitions"
        super().__init__(f"not uniquely {k}-colorable: {hint} into {k} independent classes")
        self.k = k
        self.found = found


class MethodDisagreement(AssertionError):
    """Two independent coefficient methods returned different values."""
