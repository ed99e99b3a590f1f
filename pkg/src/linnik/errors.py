"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: precondition violations exit 3,
budget/resource exhaustion exits 4.
"""


class LinnikError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(LinnikError):
    """An operation was called outside its stated domain."""


class StepCountError(PreconditionError):
    """The two-of-six step produced a number of integral images != 2.

    This signals that the ambient parameters violate the step's
    precondition (typically d not squarefree-coprime-to-5 with
    d = +-1 mod 5), not an internal fault.
    """

    def __init__(self, point, count, images):
        self.point = point
        self.count = count
        self.images = images
        super().__init__(
            f"expected exactly 2 integral images at {point}, found {count}"
        )


class BudgetError(LinnikError):
    """A configured resource budget would be exceeded."""


class DimensionCapError(BudgetError):
    """A dense-solver dimension cap would be exceeded."""
