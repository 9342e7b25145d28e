"""Exception hierarchy shared by all modules."""


class LDFormsError(Exception):
    """Base class for every error raised by the package."""


class NonPrime(LDFormsError, ValueError):
    pass


class ResourceLimit(LDFormsError):
    """A configured size or node budget was exceeded."""


class SpecMismatch(LDFormsError, ValueError):
    """Operands live over different field specs."""


class FieldDivisionByZero(LDFormsError, ZeroDivisionError):
    pass


class DuplicatePoles(LDFormsError, ValueError):
    pass


class InvalidDatum(LDFormsError, ValueError):
    pass


class ResidueSumNonzero(LDFormsError, ValueError):
    pass


class SizeNotMultipleOfP(LDFormsError, ValueError):
    pass


class ZeroScale(LDFormsError, ValueError):
    pass


class MalformedCandidate(LDFormsError, ValueError):
    pass


class WrongPrime(LDFormsError, ValueError):
    pass


class DegenerateOrbit(LDFormsError, ValueError):
    pass


class ParseError(LDFormsError, ValueError):
    """Raised by the file parsers; carries a 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
