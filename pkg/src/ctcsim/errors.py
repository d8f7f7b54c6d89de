"""Exceptions shared across the simulator."""

from __future__ import annotations

__all__ = ["ResourceLimitError", "ContractViolationError"]


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed a configured size cap."""


class ContractViolationError(RuntimeError):
    """Raised when an exact internal check fails.

    This signals either an input that is not actually a channel (for
    example a non-trace-preserving map smuggled into the fixed-point
    pipeline) or a genuine implementation bug; both must stop the run
    rather than produce an unverified answer.
    """
