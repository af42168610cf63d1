"""Machine-readable outcome of one exact check."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-degenerate"


@dataclass
class CheckReport:
    check: str
    config: dict
    status: str
    witness: Any = None
    millis: int = 0
    details: dict = field(default_factory=dict)

    @classmethod
    def make(cls, check: str, config: dict, witness, start: float | None = None) -> "CheckReport":
        millis = int((time.perf_counter() - start) * 1000) if start is not None else 0
        return cls(check, dict(config), FAIL if witness is not None else PASS, witness, millis)

    @classmethod
    def skipped(cls, check: str, config: dict, reason: str) -> "CheckReport":
        return cls(check, dict(config), SKIPPED, {"reason": reason}, 0)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self, timing: bool = False) -> dict:
        return {
            "check": self.check,
            "config": self.config,
            "status": self.status,
            "witness": self.witness,
            "millis": self.millis if timing else 0,
        }

    def sort_key(self) -> tuple:
        import json

        return (self.check, json.dumps(self.config, sort_keys=True))


def combine(check: str, config: dict, reports: list[CheckReport], start: float | None = None) -> CheckReport:
    """One report that fails on the first failing sub-report."""
    witness = None
    for r in reports:
        if r.failed:
            witness = {"sub_check": r.check, "config": r.config, "witness": r.witness}
            break
    out = CheckReport.make(check, config, witness, start)
    if witness is None and reports and all(r.status == SKIPPED for r in reports):
        out.status = SKIPPED
    return out
