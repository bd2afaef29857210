"""Semantic exception hierarchy shared by all modules.

Domain violations (bad arguments, unstable load points) and numerical
failures (non-convergence, lost brackets) are distinct: callers such as the
CLI map them to different exit codes, and sweeps record them per-row instead
of aborting.
"""

from __future__ import annotations


class StaffingError(Exception):
    """Base class for every error raised by this package."""


class DomainError(StaffingError, ValueError):
    """Arguments violate a precondition (e.g. offered load >= servers)."""


class NumericalError(StaffingError, ArithmeticError):
    """An iterative method failed to converge.

    Carries the best estimate produced so far and its error bound when the
    failing routine can provide them, plus the iteration count when the
    failure is an iteration cap.
    """

    def __init__(self, message, *, estimate=None, error_bound=None, iterations=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
        self.iterations = iterations


class BracketError(NumericalError):
    """Root bracketing failed; the message names the endpoint values."""
