"""Exception types shared across the toolkit."""


class SfkitError(Exception):
    """Base class for all toolkit errors."""


class InvalidParams(SfkitError):
    """A numeric argument violates an operation's precondition."""


class ElementOutOfRange(SfkitError):
    """An element id falls outside the ground set."""


class CardinalityExceeded(SfkitError):
    """A member set is larger than the family's declared maximum."""


class DuplicateSet(SfkitError):
    """The same set was supplied twice when building a family."""


class IndexOutOfRange(SfkitError):
    """A member index does not address a set in the family."""


class EmptyFamily(SfkitError):
    """The operation needs at least one member set."""


class NotMaximal(SfkitError):
    """A coreless sunflower handed in as maximal admits an extension."""


class BudgetExceeded(SfkitError):
    """Candidate enumeration was truncated; the search is inconclusive."""


class CombinatorialBlowup(SfkitError):
    """The exhaustive search space exceeds the hard cap; shrink the instance."""


class Unsatisfiable(SfkitError):
    """A generator cannot produce the requested number of distinct sets."""


class FamilyFormatError(SfkitError):
    """A family text file is malformed."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
