from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from .fock import FockVector
from .scalars import scalar_str


def jsonable(x: Any) -> Any:
    """Best-effort conversion of report payloads to JSON-ready values."""
    if isinstance(x, FockVector):
        return x.to_text()
    if isinstance(x, (list, tuple)):
        return [jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return scalar_str(x)
    if hasattr(x, "doubled"):
        return str(x)
    return str(x)


@dataclass
class IdentityReport:
    identity: str
    checked: int = 0
    inapplicable: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, inputs: Any, left: FockVector | Any, right: FockVector | Any) -> bool:
        self.checked += 1
        if left != right:
            self.failures.append((inputs, left, right))
            return False
        return True

    def merge(self, other: "IdentityReport") -> "IdentityReport":
        return IdentityReport(
            self.identity,
            self.checked + other.checked,
            self.inapplicable + other.inapplicable,
            self.failures + other.failures,
            self.elapsed + other.elapsed,
            {**self.notes, **other.notes},
        )

    def to_json(self, max_failures: int = 20) -> dict:
        return {
            "identity": self.identity,
            "checked": self.checked,
            "inapplicable": self.inapplicable,
            "passed": self.passed,
            "failures": [
                {"inputs": jsonable(i), "left": jsonable(a), "right": jsonable(b)}
                for i, a, b in self.failures[:max_failures]
            ],
            "notes": jsonable(self.notes),
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.identity}: checked={self.checked} "
            f"inapplicable={self.inapplicable} failures={len(self.failures)}"
        )


@contextmanager
def timed(report: IdentityReport):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed += time.perf_counter() - t0
