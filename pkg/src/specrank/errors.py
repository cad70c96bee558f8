"""Shared exception types for the package."""


class SignalError(ValueError):
    """Structurally invalid input: bad shape, non-finite samples, unreadable or malformed files."""


class NumericError(RuntimeError):
    """Numerically degenerate condition: zero total power, zero variance, eigensolver failure."""
