"""Shared exception types."""


class CapacityError(ValueError):
    """Raised when a request exceeds a hard enumeration or size bound.

    The message always names the bound that was exceeded, so callers can
    report it without reconstructing the limit themselves.
    """
