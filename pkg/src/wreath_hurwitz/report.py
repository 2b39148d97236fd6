"""Pass/fail records shared by the verification routines and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f", {len(self.failures)} failing" if self.failures else ""
        return f"[{status}] {self.name} ({self.checked} checked{extra})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures[:20]],
            "details": self.details,
        }


def combine(name: str, reports: list[CheckReport]) -> CheckReport:
    out = CheckReport(name, all(r.passed for r in reports))
    for r in reports:
        out.checked += r.checked
        out.failures.extend(f"{r.name}: {f}" for f in r.failures)
    out.details = {r.name: r.details for r in reports if r.details}
    return out
