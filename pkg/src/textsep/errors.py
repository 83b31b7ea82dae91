"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 1, DataError -> 2.
"""


class ConfigError(ValueError):
    """Invalid configuration or usage: bad parameters, flags, config files."""


class DataError(ValueError):
    """Invalid or unreadable data: images, CSV rows, model files."""
