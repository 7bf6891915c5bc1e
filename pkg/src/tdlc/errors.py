class TdlcError(Exception):
    """Base class for all domain errors raised by this package."""


class NotAGroup(TdlcError):
    pass


class NotWeaklyCyclicallyReduced(TdlcError):
    def __init__(self, word):
        super().__init__(f"word is not weakly cyclically reduced: {word}")
        self.word = word


class SmallCancellationViolated(TdlcError):
    pass


class BudgetExceeded(TdlcError):
    pass


class StepBudgetExceeded(BudgetExceeded):
    pass


class DegreeZero(TdlcError):
    pass


class DegreeMismatch(TdlcError):
    pass


class NotClosed(TdlcError):
    pass


class BoundaryMismatch(TdlcError):
    pass


class NotIntegral(TdlcError):
    pass


class NotACycle(TdlcError):
    pass


class NotChainMap(TdlcError):
    def __init__(self, which, degree, column):
        super().__init__(f"{which} fails to commute with the boundary in degree {degree} (column {column})")
        self.which = which
        self.degree = degree
        self.column = column


class HomotopyIdentityFails(TdlcError):
    def __init__(self, degree, column):
        super().__init__(f"homotopy identity fails in degree {degree} at column {column}")
        self.degree = degree
        self.column = column


class Infeasible(TdlcError):
    pass


class Disconnected(TdlcError):
    pass


class InputError(ValueError):
    """Malformed input data; ``position`` is a character offset when known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
