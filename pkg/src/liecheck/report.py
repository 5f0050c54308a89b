"""Check reports and their JSON/CSV serialization."""

from __future__ import annotations

import csv
import io
import functools
import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .rootdata import Weight, format_weight
from .series import GradedSeries

SCHEMA_VERSION = 1
CONVENTION = "antidominant-lowest"

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"
DIVERGENT = "DIVERGENT-ORACLE"
VERDICTS = (PASS, FAIL, SKIP, DIVERGENT)


def timed(fn):
    """Record the wall time of a report-producing function in ``report.millis``."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.millis = int(1000 * (time.perf_counter() - t0))
        return rep

    return wrapper


@dataclass
class CheckReport:
    check: str
    type: str
    verdict: str
    highest_weight: Optional[Weight] = None
    lam: Optional[Weight] = None  # anti-dominant lowest weight w0(highest_weight)
    series_lhs: Optional[GradedSeries] = None
    series_rhs: Optional[GradedSeries] = None
    details: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    millis: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict in (PASS, DIVERGENT)

    def to_dict(self, with_timing: bool = True) -> Dict[str, Any]:
        d: Dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "check": self.check,
            "type": self.type,
            "lambda": None if self.lam is None else format_weight(self.lam),
            "highest_weight": None if self.highest_weight is None else format_weight(self.highest_weight),
            "convention": CONVENTION,
            "series_lhs": None if self.series_lhs is None else _series_json(self.series_lhs),
            "series_rhs": None if self.series_rhs is None else _series_json(self.series_rhs),
            "verdict": self.verdict,
            "details": self.details,
            "notes": list(self.notes),
        }
        if with_timing:
            d["millis"] = self.millis
        return d

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_dict(with_timing), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "CheckReport":
        def weight(s):
            return None if s is None else tuple(int(x) for x in s.split(","))

        def series(s):
            if s is None:
                return None
            return GradedSeries.from_pairs(s["pairs"], s.get("trunc"))

        return cls(
            check=d["check"],
            type=d["type"],
            verdict=d["verdict"],
            highest_weight=weight(d.get("highest_weight")),
            lam=weight(d.get("lambda")),
            series_lhs=series(d.get("series_lhs")),
            series_rhs=series(d.get("series_rhs")),
            details=d.get("details", {}),
            notes=d.get("notes", []),
            millis=d.get("millis", 0),
        )


def _series_json(s: GradedSeries) -> Dict[str, Any]:
    return {"pairs": s.to_pairs(), "trunc": s.trunc}


def series_coefficients(s: Optional[GradedSeries]) -> str:
    return "" if s is None else ",".join(str(c) for c in s.coeffs)


CSV_COLUMNS = ["check", "type", "highest_weight", "lambda", "verdict", "series_lhs", "series_rhs"]


def reports_to_csv(reports: Sequence[CheckReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(_row(r))
    return buf.getvalue()


def reports_to_markdown(reports: Sequence[CheckReport]) -> str:
    lines = ["| " + " | ".join(CSV_COLUMNS) + " |", "|" + "---|" * len(CSV_COLUMNS)]
    for r in reports:
        row = _row(r)
        if r.verdict == FAIL:
            row[4] = "**FAIL**"
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def _row(r: CheckReport) -> List[str]:
    return [
        r.check,
        r.type,
        "" if r.highest_weight is None else format_weight(r.highest_weight),
        "" if r.lam is None else format_weight(r.lam),
        r.verdict,
        series_coefficients(r.series_lhs),
        series_coefficients(r.series_rhs),
    ]
