"""Exception hierarchy.

Every library error derives from :class:`MultispecError`.  The ``exit_code``
attribute is what the command line front end returns for it: 1 for domain
errors, 2 for malformed input.
"""


class MultispecError(Exception):
    exit_code = 1


class ParseError(MultispecError):
    exit_code = 2

    def __init__(self, message, line=1, col=1, expected=None):
        self.line = line
        self.col = col
        self.expected = expected
        where = f"line {line}, col {col}"
        if expected:
            message = f"{message} ({where}: expected {expected})"
        else:
            message = f"{message} ({where})"
        super().__init__(message)


class NotPrime(MultispecError):
    pass


class ReducibleModulus(MultispecError):
    pass


class DivideByZero(MultispecError, ZeroDivisionError):
    pass


class FieldMismatch(MultispecError):
    pass


class InexactDivision(MultispecError):
    pass


class FieldTooLarge(MultispecError):
    pass


class BudgetExceeded(MultispecError):
    pass


class DegenerateMap(MultispecError):
    pass


class DegreeTooLow(MultispecError):
    pass


class InseparableMap(MultispecError):
    pass


class NotPeriodic(MultispecError):
    pass


class ConjugationSearchFailed(MultispecError):
    pass


class CriticalPointsUnavailable(MultispecError):
    """Critical points over an infinite field that do not split into
    linear factors we can solve for."""


class PlaceMismatch(MultispecError):
    pass


class SingularCurve(MultispecError):
    pass


class Unsupported(MultispecError):
    pass


class UnsupportedM(Unsupported):
    pass


class BadSpecialization(MultispecError):
    pass


class InseparablePolynomial(MultispecError):
    pass


class IndeterminateStep(MultispecError):
    """The ultrametric inequality does not force the next valuation."""
