"""Structured outcomes of sampled checks.

Reports serialize to JSON deterministically: wall time is kept on the object
but left out of :meth:`CheckReport.to_dict` so identical seeds give
byte-identical output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .numeric import ToleranceConfig

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


def _num(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return repr(x)
    return x + 0.0


@dataclass
class CheckReport:
    check_name: str
    verdict: str
    samples_used: int
    worst_margin: float
    witnesses: list[tuple[str, np.ndarray]] = field(default_factory=list)
    tolerance: ToleranceConfig | None = None
    note: str = ""
    wall_time: float = 0.0

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == FAIL and not self.witnesses:
            raise ValueError("a failing report must carry a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def witness(self, label: str) -> np.ndarray:
        for name, vec in self.witnesses:
            if name == label:
                return vec
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "check": self.check_name,
            "verdict": self.verdict,
            "samples": int(self.samples_used),
            "worst_margin": _num(self.worst_margin),
            "witnesses": [
                {"label": label, "vector": [_num(v) for v in np.atleast_1d(vec)]}
                for label, vec in self.witnesses
            ],
            "tolerance": self.tolerance.to_dict() if self.tolerance else None,
            "note": self.note,
        }

    def summary_line(self) -> str:
        head = f"[{self.verdict.upper():>12}] {self.check_name}: worst margin {self.worst_margin:.3e} over {self.samples_used} samples"
        if self.note:
            head += f" ({self.note})"
        return head


@dataclass
class SuiteResult:
    name: str
    reports: list[CheckReport] = field(default_factory=list)
    note: str = ""

    @property
    def verdict(self) -> str:
        verdicts = [r.verdict for r in self.reports]
        if FAIL in verdicts:
            return FAIL
        if INCONCLUSIVE in verdicts or not verdicts:
            return INCONCLUSIVE
        return PASS

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __getitem__(self, name: str) -> CheckReport:
        for r in self.reports:
            if r.check_name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "verdict": self.verdict,
            "note": self.note,
            "checks": [r.to_dict() for r in self.reports],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_text(self) -> str:
        lines = [f"suite {self.name}: {self.verdict.upper()}"]
        if self.note:
            lines.append(f"  {self.note}")
        for r in self.reports:
            lines.append("  " + r.summary_line())
            for label, vec in r.witnesses:
                lines.append(f"      {label} = {format_vec(vec)}")
        return "\n".join(lines)


def format_vec(v) -> str:
    return "(" + ", ".join(repr(float(x) + 0.0) for x in np.atleast_1d(v)) + ")"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False)


def expect(report: CheckReport, expected: str, name: str | None = None, note: str = "") -> CheckReport:
    """Relabel a raw check as an expectation about its outcome.

    Expecting a failure that was not found gives Inconclusive, never Pass:
    sampling cannot prove a universal statement false by not finding a
    witness. Expecting a pass that failed is a genuine Fail.
    """
    if report.verdict == expected:
        verdict = PASS
    elif report.verdict == INCONCLUSIVE or expected == FAIL:
        verdict = INCONCLUSIVE
    else:
        verdict = FAIL
    msg = note or f"expected {expected}, observed {report.verdict}"
    return CheckReport(
        check_name=name or report.check_name,
        verdict=verdict,
        samples_used=report.samples_used,
        worst_margin=report.worst_margin,
        witnesses=list(report.witnesses),
        tolerance=report.tolerance,
        note=msg,
        wall_time=report.wall_time,
    )
