from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Report:
    """Pass/fail outcome of a verification, serialisable as JSON."""

    passed: bool
    first_violation: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict[str, Any]:
        return {"passed": self.passed, "first_violation": self.first_violation, "details": self.details}
