"""Verification report value type, merging and (de)serialization."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable


@dataclass
class VerificationReport:
    target: str
    n: int
    mode: str
    cases_checked: int = 0
    hypothesis_cases: int = 0
    violations: list[str] = field(default_factory=list)
    # hypothesis-satisfying cases excused by the "unless" clause
    exceptions: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    count: int | None = None
    elapsed: float = 0.0

    @property
    def verdict(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine two partial reports of the same run; order-insensitive."""
        details = dict(self.details)
        for key, val in other.details.items():
            if key in details and isinstance(val, (int, float)) and not isinstance(val, bool):
                details[key] = details[key] + val
            elif key in details and isinstance(val, list):
                details[key] = sorted(details[key] + val)
            else:
                details.setdefault(key, val)
        return VerificationReport(
            target=self.target,
            n=self.n,
            mode=self.mode,
            cases_checked=self.cases_checked + other.cases_checked,
            hypothesis_cases=self.hypothesis_cases + other.hypothesis_cases,
            violations=sorted(self.violations + other.violations),
            exceptions=sorted(self.exceptions + other.exceptions),
            details=details,
            seed=self.seed,
            count=self.count,
            elapsed=self.elapsed + other.elapsed,
        )

    def to_dict(self, include_elapsed: bool = True) -> dict[str, Any]:
        d = asdict(self)
        d["verdict"] = self.verdict
        if not include_elapsed:
            d.pop("elapsed")
        return d

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        d = json.loads(text)
        d.pop("verdict", None)
        return cls(**d)

    def summary_line(self) -> str:
        return (
            f"{self.target} n={self.n} {self.mode}: {self.verdict} "
            f"(cases={self.cases_checked}, hypothesis={self.hypothesis_cases}, "
            f"violations={len(self.violations)}, {self.elapsed:.2f}s)"
        )


CSV_FIELDS = ["target", "n", "mode", "seed", "count", "cases_checked", "hypothesis_cases",
              "violations", "exceptions", "verdict", "elapsed"]


def reports_to_csv(reports: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        w.writerow([r.target, r.n, r.mode, r.seed, r.count, r.cases_checked, r.hypothesis_cases,
                    len(r.violations), len(r.exceptions), r.verdict, f"{r.elapsed:.3f}"])
    return buf.getvalue()
