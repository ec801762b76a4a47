"""Exception hierarchy for pow2comp.

Every error raised by the library derives from Pow2CompError, so callers
can catch one type at the CLI boundary and map subtypes to exit codes.
"""

from __future__ import annotations


class Pow2CompError(Exception):
    """Base class for all pow2comp errors."""


class CapacityError(Pow2CompError):
    """A requested build exceeds a configured cap.

    Carries the offending request and the cap so the message can name both.
    """

    def __init__(self, message: str, *, requested: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.requested = requested
        self.cap = cap


class OutOfRangeError(Pow2CompError):
    """An index falls outside the range covered by a built table."""


class BudgetError(Pow2CompError):
    """The sparse evaluator's memo grew past its budget.

    memo_size reports how large the memo was when the budget tripped, so a
    caller can decide between retrying with a larger budget and switching
    to a classification-table lookup.
    """

    def __init__(self, message: str, *, memo_size: int, budget: int):
        super().__init__(message)
        self.memo_size = memo_size
        self.budget = budget


class UnverifiedClassError(Pow2CompError):
    """classify() matched a pattern whose residue is not certified.

    Returning the stored residue would be a guess, so the lookup refuses.
    """

    def __init__(self, message: str, *, pattern=None):
        super().__init__(message)
        self.pattern = pattern


class StabilizationError(Pow2CompError):
    """A residue sequence did not stabilize within the inspected window.

    trace holds (k, residue) pairs so the caller can inspect what was seen
    and retry with a larger kmax.
    """

    def __init__(self, message: str, *, trace: list[tuple[int, int]]):
        super().__init__(message)
        self.trace = trace


class BracketError(Pow2CompError):
    """A bisection bracket failed its sign check (indicates an internal bug)."""


class TableValidationError(Pow2CompError):
    """A serialized classification table failed re-validation on load."""
