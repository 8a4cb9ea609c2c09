"""Exception types shared across the package."""

from __future__ import annotations


class SignedFlowError(Exception):
    """Base class for all package errors."""


class GraphStructureError(SignedFlowError, ValueError):
    """A graph, cycle or orientation violates a structural invariant."""


class PreconditionError(SignedFlowError, ValueError):
    """An operation was called on an input outside its domain."""


class DomainError(SignedFlowError, KeyError):
    """A value required by an operation is missing (e.g. an edge value)."""


class Unsolvable(SignedFlowError):
    """A boundary problem has no solution; ``certificate`` explains why."""

    def __init__(self, message: str, certificate: object = None):
        super().__init__(message)
        self.certificate = certificate


class NotEnoughPaths(SignedFlowError):
    def __init__(self, requested: int, achievable: int):
        super().__init__(
            f"requested {requested} disjoint paths, only {achievable} exist"
        )
        self.requested = requested
        self.achievable = achievable


class BudgetExceeded(SignedFlowError):
    """An exhaustive search exceeded its configured size or time budget."""


class BugReport(SignedFlowError):
    """An existence statement that should hold failed on a concrete instance.

    ``instance`` carries a serialized copy of the offending input so the
    failure can be replayed.
    """

    def __init__(self, message: str, instance: str | None = None):
        if instance:
            message = f"{message}\n--- instance ---\n{instance}"
        super().__init__(message)
        self.instance = instance


class ParseError(SignedFlowError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
