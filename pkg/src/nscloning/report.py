"""Verification records and their CSV / JSON serialization.

Output is byte-reproducible: records are sorted before writing and floats are
rendered with 15 significant digits.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence


def fmt_float(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.15g}"


def fmt_exact(x) -> str:
    return str(x) if isinstance(x, (Fraction, int)) and not isinstance(x, bool) else ""


def json_number(x):
    x = float(x)
    return float(fmt_float(x)) if math.isfinite(x) else fmt_float(x)


@dataclass(frozen=True)
class CheckRecord:
    check: str
    two_j: int
    t: str
    index: int
    sample: str
    residual: Any
    tol: float
    passed: bool

    @property
    def key(self):
        return (self.check, self.two_j, self.t, self.index)

    def row(self) -> dict:
        return {
            "check": self.check,
            "two_j": self.two_j,
            "t": self.t,
            "index": self.index,
            "sample": self.sample,
            "residual": fmt_float(self.residual),
            "residual_exact": fmt_exact(self.residual),
            "tol": fmt_float(self.tol),
            "passed": "true" if self.passed else "false",
        }

    def json_row(self) -> dict:
        row = self.row()
        row["residual"] = json_number(self.residual)
        row["tol"] = json_number(self.tol)
        row["passed"] = self.passed
        return row


def make_record(check, two_j, t, index, sample, residual, tol) -> CheckRecord:
    ok = residual <= tol if math.isfinite(float(residual)) else False
    t_str = "" if t is None else (str(t) if isinstance(t, Fraction) else fmt_float(t))
    return CheckRecord(check, int(two_j), t_str, int(index), sample, residual, float(tol), bool(ok))


@dataclass
class VerificationReport:
    records: list[CheckRecord]
    wall_time: float | None = None

    def __post_init__(self):
        self.records = sorted(self.records, key=lambda r: r.key)

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    @property
    def max_residual(self) -> float:
        return max((float(r.residual) for r in self.records), default=0.0)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def summary(self) -> dict:
        out = {
            "total": self.total,
            "passed": self.passed,
            "failed": self.total - self.passed,
            "max_residual": json_number(self.max_residual),
        }
        if self.wall_time is not None:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out


def write_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def write_json(meta: dict, rows: Sequence[dict], summary: dict | None = None) -> str:
    doc = {"meta": meta, "records": list(rows)}
    if summary is not None:
        doc["summary"] = summary
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_report(report: VerificationReport, fmt: str, meta: dict) -> str:
    if fmt == "json":
        return write_json(meta, [r.json_row() for r in report.records], report.summary())
    return write_csv([r.row() for r in report.records])
