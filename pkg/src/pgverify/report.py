"""Structured pass/fail records for every verification routine."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from functools import wraps

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "error", "skipped")


@dataclass(frozen=True)
class CheckReport:
    name: str
    status: str
    residual_witness: str | None = None
    sub_reports: tuple = ()
    timing: float = 0.0
    note: str | None = None
    details: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.residual_witness is None:
            raise ValueError("a failing report needs a witness")
        if self.status == "pass" and any(s.status == "fail" for s in self.sub_reports):
            raise ValueError("a passing report cannot contain failing children")
        object.__setattr__(self, "sub_reports", tuple(self.sub_reports))

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def __bool__(self):
        return self.passed

    def find(self, name: str) -> "CheckReport | None":
        """Depth-first lookup of a (sub)report by name."""
        if self.name == name:
            return self
        for s in self.sub_reports:
            hit = s.find(name)
            if hit is not None:
                return hit
        return None


def passed(name, note=None, details=None, sub_reports=()):
    return CheckReport(name, "pass", note=note, details=details, sub_reports=sub_reports)


def failed(name, witness, note=None, details=None, sub_reports=()):
    return CheckReport(name, "fail", residual_witness=str(witness), note=note,
                       details=details, sub_reports=sub_reports)


def skipped(name, note=None):
    return CheckReport(name, "skipped", note=note)


def errored(name, message):
    return CheckReport(name, "error", note=str(message))


def residual_check(name, residual, note=None, details=None):
    """Pass iff ``residual`` is zero (falsy); otherwise fail with it as witness."""
    if not residual:
        return passed(name, note=note, details=details)
    return failed(name, residual, note=note, details=details)


def first_nonzero(name, residuals, note=None):
    """``residuals`` is an iterable of ``(label, value)``; fail on the first nonzero."""
    for label, value in residuals:
        if value:
            return failed(name, f"{label}: {value}", note=note)
    return passed(name, note=note)


def aggregate(name, reports, note=None, details=None):
    """Pass iff all children pass (``skipped`` children are neutral).

    A failing aggregate carries the first failing child's witness, prefixed
    by the path to it.
    """
    reports = tuple(reports)
    for r in reports:
        if r.status == "fail":
            return CheckReport(name, "fail", residual_witness=_deep_witness(r),
                               sub_reports=reports, note=note, details=details,
                               timing=sum(x.timing for x in reports))
    status = "error" if any(r.status == "error" for r in reports) else "pass"
    return CheckReport(name, status, sub_reports=reports, note=note, details=details,
                       timing=sum(x.timing for x in reports))


def _deep_witness(r: CheckReport) -> str:
    for s in r.sub_reports:
        if s.status == "fail":
            return f"{r.name}/{_deep_witness(s)}"
    return f"{r.name}: {r.residual_witness}"


def timed(fn):
    """Decorator stamping the wall-clock time (ms) onto a returned report."""
    @wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        return replace(rep, timing=(time.perf_counter() - t0) * 1000.0)
    return wrapper


# -- serialization ---------------------------------------------------------

def to_dict(r: CheckReport, include_timing=True) -> dict:
    d = {
        "name": r.name,
        "status": r.status,
        "residual_witness": r.residual_witness,
        "note": r.note,
        "details": r.details,
        "sub_reports": [to_dict(s, include_timing) for s in r.sub_reports],
    }
    if include_timing:
        d["timing"] = round(r.timing, 3)
    return d


def to_json(r: CheckReport, include_timing=True, indent=2) -> str:
    """Serialize with a fixed field order and a schema version header."""
    doc = {"schema_version": SCHEMA_VERSION, "report": to_dict(r, include_timing)}
    return json.dumps(doc, indent=indent, sort_keys=False, ensure_ascii=False)


def from_dict(d: dict) -> CheckReport:
    return CheckReport(
        name=d["name"],
        status=d["status"],
        residual_witness=d.get("residual_witness"),
        sub_reports=tuple(from_dict(s) for s in d.get("sub_reports", ())),
        timing=d.get("timing", 0.0),
        note=d.get("note"),
        details=d.get("details"),
    )


def from_json(text: str) -> CheckReport:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {doc.get('schema_version')!r}")
    return from_dict(doc["report"])


def render(r: CheckReport, indent=0) -> str:
    """Human-readable tree."""
    pad = "  " * indent
    mark = {"pass": "PASS", "fail": "FAIL", "error": "ERROR", "skipped": "SKIP"}[r.status]
    line = f"{pad}[{mark}] {r.name}"
    if r.status == "fail" and not r.sub_reports:
        line += f"  witness: {r.residual_witness}"
    if r.note and r.status in ("error", "skipped"):
        line += f"  ({r.note})"
    lines = [line]
    for s in r.sub_reports:
        lines.append(render(s, indent + 1))
    return "\n".join(lines)
