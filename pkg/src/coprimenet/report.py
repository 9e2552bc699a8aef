from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any

MAX_COUNTEREXAMPLES = 20


@dataclass
class VerificationReport:
    """Outcome of checking one claim over a tested range.

    A failing report always carries at least one counterexample or a numeric
    excess in ``details``.
    """

    claim: str
    tested_range: str
    passed: bool = True
    conventions: list[str] = field(default_factory=list)
    counterexamples: list[Any] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    def fail(self, example: Any) -> None:
        self.passed = False
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(example)

    def check(self, ok: bool, example: Any) -> None:
        if not ok:
            self.fail(example)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" first counterexample: {self.counterexamples[0]}" if self.counterexamples else ""
        return f"[{status}] {self.claim} over {self.tested_range}{extra}"


@contextmanager
def timed(report: VerificationReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed = time.perf_counter() - start
        if not report.passed and not report.counterexamples and "excess" not in report.details:
            report.details["excess"] = "unspecified failure"
