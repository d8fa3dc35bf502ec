"""Exception types shared across the package."""

from __future__ import annotations


class ParameterError(ValueError):
    """An argument violates a documented precondition."""


class ColoringFormatError(ParameterError):
    """Malformed colouring text; carries the 1-based line/column of the bad token."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class FamilySizeError(ParameterError):
    """The subset family C(n,k) exceeds the in-memory bit-vector guard."""


class BudgetExceededError(RuntimeError):
    """A node or pair budget ran out before the computation finished.

    `nodes_explored` is set by the search routines; `refuted_up_to` is the
    largest interval length fully refuted before the budget ran out (only
    meaningful for the exact solver).
    """

    def __init__(self, message: str, nodes_explored: int | None = None,
                 refuted_up_to: int | None = None):
        super().__init__(message)
        self.nodes_explored = nodes_explored
        self.refuted_up_to = refuted_up_to


class RoundsExhaustedError(RuntimeError):
    """Block construction hit its round limit with subsets still uncovered.

    `residual` lists the uncovered colour subsets; `trace` holds the partial
    construction trace for diagnostics.
    """

    def __init__(self, message: str, residual=None, trace=None, rounds_used: int = 0):
        super().__init__(message)
        self.residual = residual if residual is not None else []
        self.trace = trace
        self.rounds_used = rounds_used
