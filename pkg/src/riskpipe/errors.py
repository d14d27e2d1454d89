"""Shared error type carrying a machine-readable code.

Codes are part of the public contract: the REST layer maps them to HTTP
statuses and the CLI surfaces them verbatim. Keep the registry in
`riskpipe.service.api` in sync when adding codes.
"""

from __future__ import annotations

from typing import Any


class EngineError(Exception):
    """Raised for any contract violation detected by the engine."""

    def __init__(self, code: str, message: str, details: Any = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.details = details

    def __repr__(self) -> str:
        return f"EngineError({self.code}: {self.message})"


def validation_error(message: str, details: Any = None) -> EngineError:
    return EngineError("VALIDATION", message, details)
