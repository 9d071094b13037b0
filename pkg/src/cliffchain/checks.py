"""Small result record shared by the verification-style operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerificationReport:
    name: str
    passed: bool
    numbers: dict = field(default_factory=dict)
    notes: str = ""

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        nums = ", ".join(f"{k}={v:.6g}" for k, v in sorted(self.numbers.items()))
        tail = f" ({self.notes})" if self.notes else ""
        return f"[{status}] {self.name}: {nums}{tail}"
