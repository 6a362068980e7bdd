class AhsQuantError(Exception):
    """Base class for all errors raised by the package."""


class ConfigurationError(AhsQuantError, ValueError):
    """Unsupported series, rank, geometry or dimension."""


class DomainError(AhsQuantError, ValueError):
    """An argument outside an operation's domain (e.g. a non-dominant weight)."""


class NotACharacterError(AhsQuantError, ArithmeticError):
    """Leading-term subtraction produced a negative multiplicity."""

    def __init__(self, message, weight=None):
        super().__init__(message)
        self.weight = weight


class NoUniqueCriticalWeight(AhsQuantError, ArithmeticError):
    """The pairing of two labels with the density weight vanishes."""


class DisplayParseError(AhsQuantError, ValueError):
    """Malformed display weight; ``position`` is the 0-based offending offset."""

    def __init__(self, message, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position
