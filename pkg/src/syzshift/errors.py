"""Exception hierarchy shared by every layer of the engine."""


class SyzShiftError(Exception):
    """Base class for all errors raised by syzshift."""


class DimensionError(SyzShiftError):
    pass


class RingMismatchError(SyzShiftError):
    pass


class DegreeError(SyzShiftError):
    """Non-homogeneous input, or an exponent/degree that overflows."""


class ImproperIdealError(SyzShiftError):
    pass


class BudgetExceededError(SyzShiftError):
    def __init__(self, budget):
        super().__init__(f"step budget of {budget} pair reductions exceeded")
        self.budget = budget


class ContractError(SyzShiftError):
    """A precondition of a public operation was violated."""


class InternalContradictionError(SyzShiftError):
    """A mathematical invariant failed; this indicates a bug, never bad input."""


class ParseError(SyzShiftError):
    def __init__(self, kind, message, line, column, expected=()):
        self.kind = kind
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        text = f"{line}:{column}: {kind}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)
