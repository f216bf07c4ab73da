from __future__ import annotations


class GarnierError(Exception):
    exit_code = 2


class ParseError(GarnierError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownSymbolError(GarnierError):
    pass


class ZeroDenominatorError(GarnierError):
    pass


class SingularOnCurveError(GarnierError):
    """A denominator vanishes modulo the defining relation."""

    exit_code = 1


class InconsistentPassportError(GarnierError):
    pass


class NonIntegralCountError(GarnierError):
    exit_code = 1


class SearchBoundError(GarnierError):
    pass


class UnsupportedInputError(GarnierError):
    exit_code = 3


class PreconditionError(GarnierError):
    pass


class SingularSystemError(GarnierError):
    exit_code = 1


class UnknownIdentifierError(GarnierError):
    pass
