"""Shared verification report type."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


def jsonable(x: Any) -> Any:
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(jsonable(v) for v in x)
    return x


@dataclass
class Report:
    identity: str
    parameters: dict = field(default_factory=dict)
    checked: int = 0
    violations: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def violate(self, **info) -> None:
        self.violations.append({k: (str(v) if hasattr(v, "terms") else v) for k, v in info.items()})

    def merge(self, other: "Report") -> None:
        self.checked += other.checked
        self.violations.extend(other.violations)

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "parameters": jsonable(self.parameters),
            "checked": self.checked,
            "passed": self.passed,
            "violations": jsonable(self.violations),
            "notes": jsonable(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.identity}: {self.checked} checked, {len(self.violations)} violations"
