"""Violation reports returned by the validators.

Validators never raise on bad model content; they return a report so
callers can show every problem at once. Mutating operations refuse to run
on graphs with a non-empty report.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    code: str
    subject: str  # node id, scale name, or other offending element
    message: str

    def to_json(self) -> dict:
        return {"code": self.code, "subject": self.subject, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}

    def __bool__(self) -> bool:  # truthy iff clean, so `if report:` reads naturally
        return self.ok
