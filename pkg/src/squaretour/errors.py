"""Shared error types."""

__all__ = ["SizeCapError"]


class SizeCapError(ValueError):
    """Input exceeds the hard size cap of an exact engine."""
