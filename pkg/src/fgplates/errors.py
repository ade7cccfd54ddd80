"""Exception hierarchy shared by all fgplates modules."""


class PlatesError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(PlatesError):
    """A run configuration is malformed or references unknown options."""


class DomainError(PlatesError, ValueError):
    """An argument lies outside the physical domain of the model."""


class MeshError(PlatesError, ValueError):
    """A mesh request or mesh data structure is invalid."""


class ParseError(PlatesError, ValueError):
    """A mesh or table file does not follow its documented format."""


class NumericError(PlatesError, RuntimeError):
    """An internal numerical check failed to converge or a solve broke down."""
