"""Exception hierarchy shared by the whole package."""


class NashToricError(Exception):
    """Base class for all errors raised by nashtoric."""


class DimensionError(NashToricError, ValueError):
    pass


class DegenerateInputError(NashToricError, ValueError):
    pass


class SingularMatrixError(NashToricError, ValueError):
    pass


class NotPointedError(NashToricError, ValueError):
    pass


class LatticeSpanError(NashToricError, ValueError):
    pass


class InvalidCertificateError(NashToricError, ValueError):
    pass


class BudgetExceeded(NashToricError):
    """A configured time budget ran out before a computation finished."""


class LogParseError(NashToricError, ValueError):
    def __init__(self, line: int, field: str, message: str):
        self.line = line
        self.field = field
        super().__init__(f"line {line}: field {field!r}: {message}")
