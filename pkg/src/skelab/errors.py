"""Shared exception types."""


class ResourceCapError(RuntimeError):
    """An operation was asked to exceed its documented size budget."""
