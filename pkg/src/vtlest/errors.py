"""Exception hierarchy for vtlest."""


class VtlestError(Exception):
    """Base class for all vtlest errors."""


class DomainError(VtlestError, ValueError):
    """A value lies outside the mathematical domain of a conversion."""


class ConfigurationError(VtlestError, ValueError):
    """Invalid analysis or synthesis configuration."""


class InputError(VtlestError, ValueError):
    """Malformed or incompatible input data."""


class DegenerateInputError(InputError):
    """Input is structurally valid but carries no usable information."""


class DegenerateFitError(VtlestError):
    """A fit has no unique solution for the given data."""
