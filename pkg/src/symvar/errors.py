"""Shared exception types."""


class SymvarError(ValueError):
    """Base class for domain errors raised by this package."""


class CriticalCaseError(SymvarError):
    """Raised whenever p = 1/2 reaches a computation that divides by 1 - 2p.

    The minimum symmetrizer variance at p = 1/2 is an open problem; every
    entry point rejects it explicitly rather than producing garbage.
    """

    def __init__(self, message="critical case p=1/2 is open"):
        super().__init__(message)


class OrderError(SymvarError):
    """Moment/cumulant order outside the supported range."""


class SizeError(SymvarError):
    """Ground-set or problem size outside the supported range."""
