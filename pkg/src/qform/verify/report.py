"""Verification report plumbing."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    check_id: str
    params: dict
    counterexamples: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    informational: bool = False
    wall_time_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def fail(self, n, **diag):
        self.counterexamples.append({"n": n, **diag})

    def to_dict(self, with_time: bool = True) -> dict:
        out = {
            "check_id": self.check_id,
            "params": self.params,
            "passed": self.passed,
            "informational": self.informational,
            "counterexamples": self.counterexamples,
            "notes": self.notes,
        }
        if with_time:
            out["wall_time_ms"] = round(self.wall_time_ms, 1)
        return out

    def to_json(self, with_time: bool = True) -> str:
        return json.dumps(self.to_dict(with_time), sort_keys=True)


@contextmanager
def timed(report: VerificationReport):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.wall_time_ms = (time.perf_counter() - t0) * 1000.0


def all_passed(reports) -> bool:
    return all(r.passed for r in reports if not r.informational)


def summary_table(reports) -> str:
    rows = [("check", "result", "counterexamples", "ms")]
    for r in reports:
        verdict = "PASS" if r.passed else "FAIL"
        if r.informational:
            verdict = "info"
        rows.append((r.check_id, verdict, str(len(r.counterexamples)), f"{r.wall_time_ms:.0f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    total = [r for r in reports if not r.informational]
    lines.append(f"{sum(r.passed for r in total)}/{len(total)} checks passed")
    return "\n".join(lines)
