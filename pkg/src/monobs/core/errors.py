"""Exception hierarchy for monobs."""

from typing import Any, List, Optional


class MonobsError(ValueError):
    """Base class of every domain error raised by monobs."""

    kind = "error"


class IdealParseError(MonobsError):
    """Malformed ideal document."""

    kind = "parse"


class DimensionMismatchError(MonobsError):
    kind = "dimension-mismatch"


class RadicalContainmentError(MonobsError):
    """The ideal a is not contained in Rad(J), so nu is infinite."""

    kind = "radical-containment"


class UnboundedInvariantError(MonobsError):
    """A partial program with constraints only on I is unbounded."""

    kind = "unbounded-invariant"


class DegeneratePointError(MonobsError):
    """The point lies where tau_Q vanishes; it has no cone of the fan."""

    kind = "degenerate-point"


class ModulusError(MonobsError):
    """The prime divides a denominator, so reduction mod p is undefined."""

    kind = "modulus"


class BranchLimitError(MonobsError):
    kind = "branch-limit"


class BudgetExceededError(MonobsError):
    """A sampling loop did not stabilize within its budget.

    Args:
        message: Human readable description
        trace: The samples collected before giving up
    """

    kind = "budget-exceeded"

    def __init__(self, message: str, trace: Optional[List[Any]] = None):
        super().__init__(message)
        self.trace = list(trace or [])


class InconclusiveError(MonobsError):
    """An integer feasibility question could not be certified."""

    kind = "inconclusive"

    def __init__(self, message: str, tuple_: Any = None):
        super().__init__(message)
        self.tuple = tuple_
