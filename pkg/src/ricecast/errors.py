"""Exception hierarchy shared by every ricecast module."""


class RicecastError(Exception):
    """Base class for all errors raised by ricecast."""


class EmptySeries(RicecastError):
    pass


class ParseError(RicecastError):
    """Malformed CSV content. ``row`` is the 1-based line number (header = 1)."""

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class DuplicateDate(ParseError):
    pass


class UnsortedInput(ParseError):
    pass


class LeadingMissing(RicecastError):
    """The first value of a series is missing, so nothing can be carried forward."""

    def __init__(self, column=None):
        self.column = column
        name = f" in column {column!r}" if column else ""
        super().__init__(f"series{name} starts with a missing value; no prior observation to carry forward")


class TooShort(RicecastError):
    pass


class NonStationary(RicecastError):
    pass


class DegenerateVariance(RicecastError):
    pass


class NoConvergence(RicecastError):
    """Optimizer hit its iteration limit. ``best`` holds the best point reached."""

    def __init__(self, message, best=None):
        self.best = best
        super().__init__(message)


class SampleTooSmall(RicecastError):
    pass


class NoViableModel(RicecastError):
    pass


class DegreesOfFreedom(RicecastError):
    pass
