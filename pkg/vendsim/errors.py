"""Base exception for vendsim."""


class VendsimError(Exception):
    """Base class for every error raised by vendsim."""

    pass
