"""Exception hierarchy shared by every kernel module and the CLI."""

from __future__ import annotations


class EssalgError(Exception):
    """Base class for all errors raised by the package."""


class InputError(EssalgError, ValueError):
    """Malformed or semantically invalid input (bad expression, wrong ring, ...)."""


class ResourceError(EssalgError, RuntimeError):
    """A computation hit one of its configured budgets."""

    def __init__(self, budget: str, limit: int, message: str | None = None):
        self.budget = budget
        self.limit = limit
        super().__init__(message or f"budget {budget!r} exceeded (limit {limit})")
