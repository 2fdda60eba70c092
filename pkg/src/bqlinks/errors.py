"""Exception hierarchy shared by the library and the command line."""


class BqError(Exception):
    """Base class for all errors raised by :mod:`bqlinks`."""


class FormatError(BqError, ValueError):
    """Malformed input: bad table entries, bad tokens, non-bijective permutations."""


class ContractError(BqError):
    """A documented precondition does not hold (inadmissible f, invalid cocycle, ...)."""


class MoveError(BqError):
    """The requested move does not match the diagram at the given site."""


class InternalConsistencyError(BqError, AssertionError):
    """An internal self-check failed; indicates a bug rather than bad input."""
