"""
Exception types for dlgeom.
"""


class DLError(Exception):
    """Base class for all dlgeom errors."""


class ParseError(DLError, ValueError):
    """Malformed or non-canonical textual/JSON input."""


class PreconditionError(DLError, ValueError):
    """An operation was called outside its precondition."""


class CapExceededError(DLError):
    """A bounded search hit its configured cap."""

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f'{what} exceeds cap {cap}')
