"""Exception hierarchy.

Structural errors (malformed indices, shape mismatches, unparsable input) are
kept apart from semantic failures, which are reported as data rather than
raised.
"""

from __future__ import annotations


class LambdaGraphError(ValueError):
    """Base class for every error raised by this package."""


class StructuralError(LambdaGraphError):
    """An object is not well formed: bad index, wrong length, unknown label."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class DimensionError(StructuralError):
    """Matrix shapes do not fit together."""


class OutOfRangeError(LambdaGraphError):
    """A requested length or level exceeds the truncation bound."""


class NonEssentialGraphError(LambdaGraphError):
    def __init__(self, stranded):
        self.stranded = list(stranded)
        super().__init__(f"graph is not essential; stranded vertices: {self.stranded}")


class UnknownSymbolError(LambdaGraphError):
    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"symbol {symbol!r} is not in the alphabet")


class GroupLawError(LambdaGraphError):
    """A Cayley table violates a group axiom; ``triple`` names the witness."""

    def __init__(self, law: str, triple: tuple):
        self.law = law
        self.triple = triple
        super().__init__(f"{law} fails at {triple}")


class InvalidSystemError(LambdaGraphError):
    """Raised when an operation requires a valid system and gets an invalid one."""

    def __init__(self, message: str, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class NonFreeActionError(LambdaGraphError):
    pass


class NonCanonicalError(LambdaGraphError):
    pass


class TransferError(LambdaGraphError):
    """A transfer map fails the one-block coboundary equation on some 2-word."""

    def __init__(self, word: tuple, detail: str = ""):
        self.word = word
        super().__init__(f"transfer equation fails on 2-word {list(word)} {detail}".rstrip())


class InadmissibleError(LambdaGraphError):
    pass


class SearchSpaceExceeded(LambdaGraphError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"search space of {size} candidates exceeds the limit {limit}; refusing to truncate")
