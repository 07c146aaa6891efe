"""Exception types shared across the package."""


class TateError(Exception):
    """Base class for all package-specific errors."""


class ContextError(TateError, ValueError):
    """Invalid global parameters (non-prime p, bad precision, bad names)."""


class ModulusOverflowError(ContextError):
    """p**prec exceeds the supported coefficient width (2**62)."""


class ValuationError(TateError, ArithmeticError):
    """Exact division requested with val(divisor) > val(dividend)."""


class ZeroDivisorError(TateError, ZeroDivisionError):
    """Division by an element that is zero modulo p**prec."""


class DivisibilityError(TateError, ArithmeticError):
    """Monomial quotient requested where the divisor does not divide."""


class ZeroSeriesError(TateError, ValueError):
    """Leading term (or similar) requested of the zero series."""


class BadPrimeError(TateError, ValueError):
    """Prime outside the supported range for a generator (p in {2,3})."""


class UnsupportedIndexError(TateError, ValueError):
    """Division polynomial requested for an even index."""


class SystemFormatError(TateError, ValueError):
    """Malformed system file or series text.

    Carries the 1-based line and column of the offending token.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
