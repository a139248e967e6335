"""
Incidence Errors
Exceptions raised while reading and validating configuration tables.
"""

from typing import Optional


class TableError(ValueError):
    """Base class for configuration table failures."""


class ParseError(TableError):
    """Malformed table text, located by line and column (both 1-based)."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DuplicateIncidence(TableError):
    """A point label appears twice on the same line."""


class NotTriplePoint(TableError):
    """A point lies on a number of lines other than three."""

    def __init__(self, label: str, count: int):
        self.label = label
        self.count = count
        super().__init__(f"Point {label} lies on {count} lines, expected 3")


class RepeatedPair(TableError):
    """Two lines share more than one point."""

    def __init__(self, first: str, second: str, shared: Optional[list] = None):
        self.first = first
        self.second = second
        self.shared = shared or []
        super().__init__(f"Lines {first} and {second} share points {self.shared}")


class CensusMismatch(TableError):
    """The line census violates the counting identities."""
