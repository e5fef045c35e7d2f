"""Exception types shared across the package.

Three failure categories are distinguished so that callers (and the
command-line front end) can map them to distinct exit codes: bad inputs,
requests whose accuracy target could not be certified, and requests that
would exceed a hard resource ceiling.
"""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceLimitError(DomainError):
    """A request would exceed a hard resource ceiling (grid size, term count)."""


class AccuracyError(RuntimeError):
    """A requested error tolerance could not be certified.

    Carries the best estimate obtained so far, when one exists, so that a
    caller may still inspect the uncertified value.
    """

    def __init__(self, message: str, best_estimate: float | None = None):
        super().__init__(message)
        self.best_estimate = best_estimate
