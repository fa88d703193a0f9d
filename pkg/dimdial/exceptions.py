"""Custom exceptions for dimdial."""

from __future__ import annotations

from typing import Any


class DimdialError(Exception):
    """Base exception for dimdial errors."""

    def __init__(self, message: str, context: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}

    def __str__(self) -> str:
        if self.context:
            context_str = ", ".join(f"{k}={v!r}" for k, v in self.context.items())
            return f"{self.message} ({context_str})"
        return self.message


class ConfigurationError(DimdialError):
    """Raised when configuration is invalid or missing."""

    def __init__(self, message: str, missing_keys: list[str] | None = None,
                 context: dict[str, Any] | None = None):
        super().__init__(message, context)
        self.missing_keys = missing_keys or []


class ValidationError(DimdialError):
    """Raised when an input fails validation against the domain model."""

    def __init__(self, message: str, field: str | None = None,
                 value: Any = None, context: dict[str, Any] | None = None):
        ctx = context or {}
        if field:
            ctx["field"] = field
        if value is not None:
            ctx["value"] = value
        super().__init__(message, ctx)
        self.field = field
        self.value = value


class ActParseError(ValidationError):
    """Raised when dialogue-act notation cannot be parsed."""

    def __init__(self, message: str, token: str, position: int | None = None,
                 context: dict[str, Any] | None = None):
        ctx = context or {}
        ctx["token"] = token
        if position is not None:
            ctx["position"] = position
        super().__init__(message, context=ctx)
        self.token = token
        self.position = position


class InvariantViolationError(DimdialError):
    """Raised when an internal shape or index invariant is broken."""


class PolicyCompatibilityError(DimdialError):
    """Raised when a persisted policy does not fit the agent loading it."""

    def __init__(self, message: str, expected: Any = None, found: Any = None,
                 context: dict[str, Any] | None = None):
        ctx = context or {}
        if expected is not None:
            ctx["expected"] = expected
        if found is not None:
            ctx["found"] = found
        super().__init__(message, ctx)
        self.expected = expected
        self.found = found


class DataFileError(DimdialError):
    """Raised when a data file cannot be read, parsed or written."""

    def __init__(self, message: str, path: str | None = None,
                 context: dict[str, Any] | None = None):
        ctx = context or {}
        if path:
            ctx["path"] = path
        super().__init__(message, ctx)
        self.path = path
