"""Verifier reports and their JSON/CSV serialisation."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

# status values; everything except "fail" counts as passing
PASS, FAIL, VACUOUS, SKIPPED = "pass", "fail", "vacuous", "skipped"

FIELDS = ["name", "pass", "status", "lhs", "rhs", "slack", "tol", "n", "q", "notes"]


def inequality_tol(quad_err: float, rhs: float) -> float:
    """Allowed shortfall: 3x the quadrature error plus 1e-12 relative."""
    return 3 * abs(quad_err) + 1e-12 * abs(rhs)


@dataclass
class VerifierReport:
    """One-sided check ``lhs >= rhs - tol``."""

    name: str
    lhs: float
    rhs: float
    tol: float = 0.0
    n: Optional[int] = None
    q: Optional[float] = None
    status: str = ""
    notes: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.status:
            self.status = PASS if self.lhs >= self.rhs - self.tol else FAIL

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    @property
    def slack(self) -> float:
        if math.isinf(self.lhs) and math.isinf(self.rhs):
            return 0.0 if self.lhs == self.rhs else self.lhs
        return self.lhs - self.rhs

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "status": self.status,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "slack": _num(self.slack),
            "tol": _num(self.tol),
            "n": self.n,
            "q": self.q,
            "notes": "; ".join(self.notes),
            **({"extra": self.extra} if self.extra else {}),
        }

    def line(self) -> str:
        tag = self.status.upper()
        return (f"[{tag:7s}] {self.name}: lhs={self.lhs:.6g} rhs={self.rhs:.6g} "
                f"slack={self.slack:.3g}" + (f" ({'; '.join(self.notes)})" if self.notes else ""))


def _num(x):
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def reports_to_json(reports: Iterable[VerifierReport], **meta) -> str:
    reports = list(reports)
    doc = {
        "meta": meta,
        "all_pass": all(r.passed for r in reports),
        "count": len(reports),
        "failures": sum(not r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def reports_to_csv(reports: Iterable[VerifierReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELDS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.to_dict())
    return buf.getvalue()
