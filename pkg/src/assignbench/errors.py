"""Exception hierarchy shared by every module of the package."""


class AssignmentError(Exception):
    """Base class for all errors raised by assignbench."""


class NonSquareError(AssignmentError, ValueError):
    pass


class NegativeCostError(AssignmentError, ValueError):
    pass


class NonIntegerCostError(AssignmentError, TypeError):
    pass


class DimensionMismatchError(AssignmentError, ValueError):
    pass


class PermutationInvalidError(AssignmentError, ValueError):
    """An assignment is not a permutation of ``0..k-1``.

    ``kind`` is one of ``"length"``, ``"duplicate"`` or ``"out-of-range"``.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class CostOverflowError(AssignmentError, OverflowError):
    """A cost or accumulated sum does not fit the signed 64-bit range."""


class InstanceTooLargeError(AssignmentError):
    """A solver was asked to run beyond its configured size cap."""


class NoUncoveredCellError(AssignmentError):
    pass


class ExpandCompleteError(AssignmentError):
    pass


class InvalidRangeError(AssignmentError, ValueError):
    pass


class InsufficientDataError(AssignmentError, ValueError):
    pass


class MatrixSyntaxError(AssignmentError, ValueError):
    """Malformed matrix file; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
