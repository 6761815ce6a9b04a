"""Verdict records shared by every decision procedure."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INAPPLICABLE = "inapplicable"
    CONSISTENT = "certificate-consistent"
    OBSTRUCTION = "obstruction"
    INVALID = "invalid-certificate"

    def __str__(self) -> str:
        return self.value

    @property
    def exit_code(self) -> int:
        return 1 if self in (Status.FAIL, Status.OBSTRUCTION, Status.INVALID) else 0


@dataclass(frozen=True)
class Verdict:
    """Outcome of one necessary-condition test.

    ``evidence`` holds JSON-friendly data naming the concrete quantity that
    decided the outcome; ``paper_tag`` is a short stable label for the rule.
    """

    status: Status
    condition: str
    evidence: dict[str, Any] = field(default_factory=dict)
    paper_tag: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (Status.PASS, Status.CONSISTENT)

    @property
    def failed(self) -> bool:
        return self.status.exit_code == 1

    def as_dict(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "condition": self.condition,
            "evidence": self.evidence,
            "paper_tag": self.paper_tag,
        }
