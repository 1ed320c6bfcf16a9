"""Exception hierarchy.

Each family maps to one CLI exit code: validation problems exit 2,
precision or truncation exhaustion exits 3, and mathematical
inconsistencies exit 4.
"""


class TriangleFormsError(Exception):
    exit_code = 1


class ValidationError(TriangleFormsError, ValueError):
    exit_code = 2


class PrecisionError(TriangleFormsError, ArithmeticError):
    exit_code = 3


class InconsistencyError(TriangleFormsError, ArithmeticError):
    exit_code = 4


# signatures
class OrderViolation(ValidationError):
    pass


class NotHyperbolic(ValidationError):
    pass


# series engine
class DivisionByZeroSeries(ValidationError, ZeroDivisionError):
    pass


class BadValuation(ValidationError):
    pass


# pipeline inputs
class InvalidForm(ValidationError):
    pass


class EquivalentToDelta(ValidationError):
    pass


# precision / order exhaustion
class InsufficientOrder(PrecisionError):
    pass


class PrecisionExhausted(PrecisionError):
    pass


class OutsideReliableDisk(PrecisionError):
    pass


class InsufficientPrecision(PrecisionError):
    pass


class NewtonDivergence(PrecisionError):
    pass


# mathematical inconsistencies
class RecursionInconsistency(InconsistencyError):
    pass


class DegreeMismatch(InconsistencyError):
    pass


class NonconstantRemainder(InconsistencyError):
    pass


class NonrealAlpha(InconsistencyError):
    pass
