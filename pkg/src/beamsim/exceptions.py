"""Exception hierarchy shared by all beamsim modules."""


class BeamsimError(Exception):
    """Base class for every error raised by this package."""


class InvalidGeometryError(BeamsimError, ValueError):
    """Array geometry parameters violate a physical constraint."""


class GeometryMismatchError(BeamsimError, ValueError):
    """An operation received a geometry of the wrong kind or size."""


class ParameterError(BeamsimError, ValueError):
    """A numeric parameter (range, step, rate) is invalid."""


class RangeError(BeamsimError, ValueError):
    """A requested value lies outside the supported range."""


class FormatError(BeamsimError):
    """An audio or configuration file has an unsupported format."""
