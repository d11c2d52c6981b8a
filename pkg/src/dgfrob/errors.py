"""Exception hierarchy.

Three families matter to the CLI: bad input (exit 1), a computation that
would leave the degree window (exit 2) and a broken internal invariant
(exit 3).
"""


class DgError(Exception):
    pass


class InputError(DgError):
    pass


class WindowError(DgError):
    pass


class InvariantError(DgError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class SchemaError(InputError):
    def __init__(self, message, field=None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class HomogeneityError(InputError):
    pass


class IllDefinedDifferential(InputError):
    def __init__(self, message, relation=None):
        self.relation = relation
        super().__init__(message)


class GradingViolation(InputError):
    pass


class UnitViolation(InputError):
    pass


class NotAssociative(InputError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"associativity fails on {triple}")


# validation failures for semi-free modules
class SemiFreeError(InputError):
    pass


class NotTriangular(SemiFreeError):
    pass


class DegreeMismatch(SemiFreeError):
    pass


class DifferentialNotSquareZero(SemiFreeError):
    pass


class NotMinimal(SemiFreeError):
    pass


class MismatchAt(DgError):
    def __init__(self, degree, reason=""):
        self.degree = degree
        self.reason = reason
        super().__init__(f"mismatch at degree {degree}" + (f": {reason}" if reason else ""))


class WindowExceeded(WindowError):
    pass


class CutoffTooSmall(WindowError):
    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)


class DimensionExceeded(WindowError):
    pass


class NotAutomorphism(InvariantError):
    pass


class InternalInvariantError(InvariantError):
    pass
