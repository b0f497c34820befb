"""Exception hierarchy shared by the engine and the command line."""


class SkewPBWError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SkewPBWError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UndeclaredNameError(ParseError):
    pass


class InhomogeneousError(SkewPBWError, ValueError):
    """An operand or relation mixes several constitutions (or carries group factors)."""

    def __init__(self, message, constitutions=()):
        self.constitutions = tuple(constitutions)
        super().__init__(message)


class SpecializationPoleError(SkewPBWError, ZeroDivisionError):
    pass


class OutOfBoundError(SkewPBWError):
    """A computation would exceed the degree bound of the presentation."""


class DegenerateQuotientError(SkewPBWError):
    pass


class ValidationError(SkewPBWError):
    """Input is well formed but violates a checked mathematical hypothesis."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotHopfIdealError(ValidationError):
    pass


class CoidealViolation(ValidationError):
    pass


class NotThinError(ValidationError):
    pass


class EngineFailure(SkewPBWError):
    """An internal consistency check failed; results cannot be trusted."""


class DimensionMismatch(EngineFailure):
    pass


class MinimalPowerViolation(EngineFailure):
    """An extracted minimal power m is neither 1 nor the order of p(u,u)."""
