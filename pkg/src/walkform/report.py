"""Pass/fail records produced by the theorem checks."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

__all__ = ["VerificationReport", "make_report"]


@dataclass
class VerificationReport:
    claim: str
    params: dict[str, Any]
    status: str
    witness: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"status must be 'pass' or 'fail', got {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d = asdict(self)
        if not timing:
            d["elapsed_ms"] = None
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "VerificationReport":
        return cls(
            claim=d["claim"],
            params=dict(d["params"]),
            status=d["status"],
            witness=dict(d.get("witness", {})),
            elapsed_ms=d.get("elapsed_ms"),
        )

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    def summary(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.status.upper():4s} {self.claim} {params}".rstrip()


def make_report(claim: str, params: dict[str, Any], ok: bool, witness: dict[str, Any],
                started: float) -> VerificationReport:
    """Build a report; ``started`` is a :func:`time.perf_counter` reading."""
    return VerificationReport(
        claim=claim,
        params=params,
        status="pass" if ok else "fail",
        witness=witness,
        elapsed_ms=round((time.perf_counter() - started) * 1e3, 3),
    )
