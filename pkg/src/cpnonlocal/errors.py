"""Exception types raised across the package."""


class StateValidationError(ValueError):
    """A polarization state or photon pair is not normalized or is degenerate."""


class ConfigError(ValueError):
    """Invalid or incomplete experiment configuration.

    ``key`` carries the dotted key path (``section.key``) when the problem
    can be pinned to a single entry.
    """

    def __init__(self, message, key=None):
        self.key = key
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message)


class UndefinedCorrelationError(ValueError):
    """A correlation statistic was requested on an all-zero channel."""


class SeriesFormatError(ValueError):
    """Base class for trial-series file problems."""


class VersionMismatchError(SeriesFormatError):
    pass


class RowCountError(SeriesFormatError):
    pass


class MalformedRowError(SeriesFormatError):
    pass


class IntegrityError(SeriesFormatError):
    """Header and rows disagree."""
