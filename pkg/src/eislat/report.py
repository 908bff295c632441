"""Verification records and reports."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA_VERSION = 1


def fmt(x: Any) -> str:
    """Stable text form for expected/actual values."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(fmt(v) for v in x) + ")"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{fmt(k)}: {fmt(v)}" for k, v in x.items()) + "}"
    return str(x)


@dataclass(frozen=True)
class VerificationRecord:
    check_id: str
    description: str
    expected: str
    actual: str
    anchor: str  # the claim being checked, in words

    @property
    def status(self) -> str:
        return "pass" if self.expected == self.actual else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status
        return d

    @classmethod
    def from_dict(cls, d: dict) -> VerificationRecord:
        rec = cls(d["check_id"], d["description"], d["expected"], d["actual"], d["anchor"])
        if d.get("status", rec.status) != rec.status:
            raise ValueError(f"inconsistent status for {rec.check_id}")
        return rec


def check(check_id: str, description: str, expected: Any, actual: Any, anchor: str) -> VerificationRecord:
    return VerificationRecord(check_id, description, fmt(expected), fmt(actual), anchor)


@dataclass
class Report:
    suite: str
    version: str
    config: dict
    checks: list[VerificationRecord] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list[VerificationRecord]:
        return [c for c in self.checks if not c.passed]

    def comparable(self) -> dict:
        """Payload without timing, for run-to-run comparison."""
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "version": self.version,
            "config": dict(sorted(self.config.items())),
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_dict(self) -> dict:
        d = self.comparable()
        d["wall_time"] = round(self.wall_time, 3)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')}")
        rep = cls(d["suite"], d["version"], dict(d["config"]),
                  [VerificationRecord.from_dict(c) for c in d["checks"]], float(d.get("wall_time", 0.0)))
        if rep.status != d["status"]:
            raise ValueError("overall status does not match the checks")
        return rep


def emit_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=False) + "\n"


def parse_json(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def emit_text(report: Report) -> str:
    lines = [f"suite {report.suite}  (version {report.version})"]
    cfg = ", ".join(f"{k}={v}" for k, v in sorted(report.config.items()))
    if cfg:
        lines.append(f"config: {cfg}")
    for c in report.checks:
        line = f"[{c.status.upper()}] {c.check_id}: {c.description}"
        if c.passed:
            line += f" = {c.actual}"
        else:
            line += f"  expected {c.expected}, got {c.actual}  <{c.anchor}>"
        lines.append(line)
    n_fail = len(report.failures())
    lines.append(f"{len(report.checks) - n_fail}/{len(report.checks)} checks passed; "
                 f"overall {report.status.upper()} in {report.wall_time:.1f}s")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt_name: str = "text") -> bytes:
    if fmt_name == "text":
        return emit_text(report).encode()
    if fmt_name in ("json", "structured"):
        return emit_json(report).encode()
    raise ValueError(f"unknown report format {fmt_name!r}")
