"""Exception hierarchy shared by every collatz2 module."""


class CollatzError(Exception):
    """Base class for all errors raised by this package."""


class Overflow(CollatzError, OverflowError):
    """An intermediate 3v+1 left the unsigned 64-bit range."""


class NotOdd(CollatzError, ValueError):
    pass


class ParityError(CollatzError, ValueError):
    pass


class BudgetExceeded(CollatzError):
    """An orbit or level ran past its iteration budget.

    Stands in for a level that never stops iterating: nothing finite can
    confirm that case, so the budget is the operational cut-off.
    """

    def __init__(self, start: int, budget: int):
        super().__init__(f"orbit of {start} did not finish within {budget} steps")
        self.start = start
        self.budget = budget


class OutOfRange(CollatzError, IndexError):
    pass


class NotRetained(CollatzError):
    """Element lists were requested from a table built in streaming mode."""


class ParseError(CollatzError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SchemaError(CollatzError, ValueError):
    pass
