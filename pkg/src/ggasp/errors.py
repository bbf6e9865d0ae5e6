"""Exception types shared across the package."""


class GgaspError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GgaspError):
    """An instance document, assignment or source problem is malformed."""


class DispatchError(GgaspError):
    """A solver was invoked on an instance that violates its precondition."""


class BudgetExceededError(GgaspError):
    """An enumeration exceeded its work budget; the answer is unknown."""

    def __init__(self, message, visited=None):
        super().__init__(message)
        self.visited = visited


class NotIndividuallyRationalError(GgaspError):
    """A core-stability check was asked about a non-IR assignment."""

    def __init__(self, player):
        super().__init__(f"assignment is not individually rational for player {player}")
        self.player = player
