"""Exception types shared across the package."""


class LoopAlgError(Exception):
    """Base class for all package-specific errors."""


class PolyParseError(LoopAlgError):
    """Malformed polynomial text. Carries the 0-based offset of the problem."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(PolyParseError):
    """An identifier that is not an allowed ambient variable."""


class DimensionMismatchError(LoopAlgError):
    """The ambient dimension is invalid for the requested operation."""


class PrecisionExhaustedError(LoopAlgError):
    """A series operation produced an empty known window.

    `required_cap`, when set, is a cap that would have been sufficient.
    """

    def __init__(self, message, required_cap=None):
        if required_cap is not None:
            message = f"{message} (a cap of at least {required_cap} is required)"
        super().__init__(message)
        self.required_cap = required_cap


class ZeroPolynomialError(LoopAlgError):
    """The zero polynomial was supplied where a nonzero one is required."""


class NonInvertibleLeadingTermError(LoopAlgError):
    """Series inversion was attempted without an invertible lowest term."""


class GoodElementViolationError(LoopAlgError):
    """A semi-norm extension was requested at a level where the denominator
    element has vanishing (or only upper-bounded) semi-norm."""
