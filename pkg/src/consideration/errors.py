"""Exception types shared by every module."""


class ConsiderationError(Exception):
    """Base class for errors raised by this package."""


class CapacityError(ConsiderationError):
    """An enumeration would exceed a configured size cap."""


class DomainMismatchError(ConsiderationError):
    """Two objects live over different universes."""


class ValidationError(ConsiderationError, ValueError):
    """Malformed input: bad rule parameters, non-contractive tables, etc."""


class RepresentationError(ConsiderationError):
    """A threshold representation was requested for a non-IO filter.

    The ``report`` attribute carries the failing IO check, witness included.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
