"""Exception hierarchy shared across the package."""


class PRDError(Exception):
    """Base class for all errors raised by prdcurves."""


class InputError(PRDError, ValueError):
    """Invalid argument or data handed to an operation."""


class FileFormatError(PRDError):
    """A feature/curve file violates its declared format."""
