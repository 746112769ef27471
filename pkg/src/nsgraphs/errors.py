"""Exception hierarchy shared by every layer."""

from __future__ import annotations


class NSGraphError(Exception):
    """Base class for all library errors."""


# sequence algebra

class NegativeAlmostEverywhere(NSGraphError, ArithmeticError):
    """Truncated subtraction whose result would be negative almost everywhere."""


class EmptySet(NSGraphError, ValueError):
    pass


class NotIntegerValued(NSGraphError, ValueError):
    pass


class NotNaturalValued(NSGraphError, ValueError):
    pass


# standard graphs

class GraphFormatError(NSGraphError, ValueError):
    pass


class Unreachable(NSGraphError):
    pass


class Disconnected(NSGraphError):
    pass


class NotEulerian(NSGraphError):
    pass


class TooLargeForBruteForce(NSGraphError):
    pass


class FewerThanThreeVertices(NSGraphError):
    pass


# families and nonstandard layer

class InfiniteGraph(NSGraphError):
    """Raised when a finite materialization of an infinite graph is requested."""


class InvalidFamily(NSGraphError, ValueError):
    pass


class InvalidSelector(NSGraphError, ValueError):
    pass


class InvalidRange(NSGraphError, ValueError):
    pass


class DisconnectedAlmostEverywhere(NSGraphError):
    pass


class FamilyMismatch(NSGraphError):
    pass


class NoPath(NSGraphError):
    pass


class NotHyperfinite(NSGraphError):
    pass


class NotHyperfiniteConnected(NotHyperfinite):
    pass


class FewerThanThreeVerticesAE(NSGraphError):
    pass


class NotConstantFamily(NSGraphError):
    pass


class TransferInconsistency(NSGraphError, AssertionError):
    """A dedicated predicate disagreed with its transferred consistency check."""


class FamilyFileError(NSGraphError, ValueError):
    """Malformed family specification file."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
