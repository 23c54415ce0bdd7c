"""Exception hierarchy shared by all chibound modules."""


class ChiboundError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(ChiboundError, ValueError):
    pass


class IndexOutOfRange(InvalidParameter):
    pass


class SelfLoop(InvalidParameter):
    pass


class ParseError(ChiboundError):
    pass


class ClaimMismatch(ChiboundError):
    """A recorded claim about a graph disagrees with what was computed."""


class TooLarge(ChiboundError):
    pass


class TableTooShort(ChiboundError):
    pass


class PreconditionFailed(ChiboundError):
    pass


class SolverTimeout(ChiboundError):
    """Raised inside search routines when the time budget is exhausted."""
