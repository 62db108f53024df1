"""Exception types shared across the toolkit."""

from __future__ import annotations


class VaritasError(Exception):
    """Base class for all errors raised by this package."""


class GroupError(VaritasError):
    """Invalid group data: bad table, bad generators, bad subgroup."""


class CapError(VaritasError):
    """A configured order cap was exceeded."""


class BudgetError(VaritasError):
    """An evaluation budget was exhausted.

    ``required`` carries the estimated number of elementary products the
    operation would need to finish, when that estimate is available.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class WordSyntaxError(VaritasError):
    """Word parse failure, annotated with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
