"""Exception types shared across the package."""


class LisaKitError(Exception):
    """Base class for all lisakit errors."""


class InputError(LisaKitError):
    """Invalid user input: files, columns, ids, or flag combinations."""


class DegenerateError(LisaKitError):
    """A statistic or distribution is undefined for the given data."""
