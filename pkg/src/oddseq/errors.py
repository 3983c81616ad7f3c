"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """Raised when a request exceeds a configured memory or size cap."""
