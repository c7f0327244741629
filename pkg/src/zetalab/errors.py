"""Exception hierarchy shared by every module."""


class ZetaLabError(Exception):
    """Base class for all errors raised by zetalab."""


class DomainError(ZetaLabError, ValueError):
    """Argument outside the supported region."""


class PoleError(DomainError):
    """Evaluation requested too close to the pole of zeta at s = 1."""


class UnsupportedError(ZetaLabError):
    """Request is valid mathematically but outside what a routine supports."""


class InputError(ZetaLabError, ValueError):
    """Malformed or degenerate input (duplicate frequencies, short grids...)."""


class ResourceError(ZetaLabError):
    """Request would exceed a memory or size guard."""


class AccuracyError(ZetaLabError):
    """Adaptive refinement failed to reach the requested tolerance.

    ``location`` holds the ``(left, right)`` endpoints of the offending panel.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location
