"""Exception hierarchy shared by all modules."""


class FallDegError(Exception):
    """Base class for every error raised by this package."""


class NonPrimeCharacteristic(FallDegError, ValueError):
    pass


class ReducibleModulus(FallDegError, ValueError):
    pass


class MixedFields(FallDegError, TypeError):
    pass


class MixedRings(FallDegError, TypeError):
    pass


class DivisionByZero(FallDegError, ZeroDivisionError):
    pass


class InvalidSubfield(FallDegError, ValueError):
    pass


class NotABasis(FallDegError, ValueError):
    pass


class SingularMatrix(FallDegError, ValueError):
    pass


class CapExceeded(FallDegError, RuntimeError):
    """A configured size cap (matrix columns, enumeration points, field size) was hit."""


class DegreeTooLarge(FallDegError, ValueError):
    pass


class OracleInfeasible(FallDegError, RuntimeError):
    pass


class NotApplicable(FallDegError, ValueError):
    pass


class EmptySolutionSet(FallDegError, ValueError):
    pass


class ProjectionNotInjective(FallDegError, ValueError):
    pass


class InvalidBase(FallDegError, ValueError):
    pass


class InvalidParameters(FallDegError, ValueError):
    pass


class ConstantInput(FallDegError, ValueError):
    pass


class NotNormalBasis(FallDegError, ValueError):
    pass


class ZeroInput(FallDegError, ValueError):
    pass


class NoUnivariateFound(FallDegError, RuntimeError):
    def __init__(self, message, dims=None):
        super().__init__(message)
        self.dims = dims or {}


class NotRadical(FallDegError, ValueError):
    pass


class FieldTooSmall(FallDegError, ValueError):
    pass


class TrialCapExceeded(FallDegError, RuntimeError):
    pass


class ParameterCapExceeded(FallDegError, ValueError):
    pass


class BoundExceeded(FallDegError, RuntimeError):
    """The escalating solver went past the theorem bound: a falsifying event."""


class ParseError(FallDegError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + loc)
        self.message = message
        self.line = line
        self.column = column
