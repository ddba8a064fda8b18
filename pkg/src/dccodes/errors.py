"""Exception hierarchy shared by all dccodes modules."""


class DccError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class ParityError(DccError, ValueError):
    """A first row or border bit would produce a code that is not even."""

    exit_code = 5


class BudgetExceeded(DccError):
    """An enumeration would exceed its configured work budget."""

    exit_code = 3


class InfeasibleError(DccError):
    """A linear system or enumerator family has no admissible solution."""

    exit_code = 4


class NotInFamilyError(DccError):
    """A weight distribution is not a member of a parametric family."""

    exit_code = 4


class NegativeCoefficientError(InfeasibleError):
    """Instantiating a family produced a negative or non-integral count."""


class ReferenceIncomplete(DccError):
    """Reference data lacks the values needed for a verdict."""

    exit_code = 6
