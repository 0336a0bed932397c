"""Exception types shared across the package."""

from __future__ import annotations


class AntPathError(Exception):
    """Base class for every error raised by this package."""


class InvalidTermError(AntPathError):
    """A term is empty (or becomes empty) after normalization."""


class CorpusParseError(AntPathError):
    """A definitions file or QA log does not conform to its format.

    ``location`` is a 1-based line number for definitions files and a
    0-based record index for QA logs.
    """

    def __init__(self, message: str, location: int | None = None):
        super().__init__(message if location is None else f"{message} (at {location})")
        self.location = location


class DuplicateDefinitionError(CorpusParseError):
    """Two entries in one definitions file define the same term."""


class InvalidParameterError(AntPathError):
    """A configuration value violates its documented range."""


class UnknownTermError(AntPathError):
    """A queried term does not exist in the graph."""

    def __init__(self, term: str, suggestions: tuple[str, ...] = ()):
        detail = f"unknown term: {term!r}"
        if suggestions:
            detail += " (did you mean: " + ", ".join(suggestions) + "?)"
        super().__init__(detail)
        self.term = term
        self.suggestions = suggestions


class EmptyNeighborhoodError(AntPathError):
    """No candidate edge is available; callers treat this as a dead end."""


class NoPathError(AntPathError):
    """No tour reached the root or a known term."""

    def __init__(self, query: str, dead_ends: tuple[str, ...] = ()):
        detail = f"no feasible path from {query!r}"
        if dead_ends:
            detail += "; search dead-ended at: " + ", ".join(dead_ends)
        super().__init__(detail)
        self.query = query
        self.dead_ends = dead_ends


class OracleTooLargeError(AntPathError):
    """Exhaustive enumeration exceeded its blow-up guard."""


class SnapshotError(AntPathError):
    """A snapshot document is malformed; ``element`` names the offender."""

    def __init__(self, message: str, element: str):
        super().__init__(f"{message}: {element}")
        self.element = element
