"""Reports produced by the command-line front end, and their serialisation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact_linalg import _Matrix

__all__ = ["PASS", "FAIL", "ERROR", "EXIT_CODES", "SCHEMA_VERSION", "Section", "Report",
           "emit", "to_json_value"]

PASS, FAIL, ERROR = "PASS", "FAIL", "ERROR"
EXIT_CODES = {PASS: 0, FAIL: 1, ERROR: 2}
SCHEMA_VERSION = 1


@dataclass
class Section:
    title: str
    status: str = PASS
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, line: str) -> None:
        self.lines.append(line)

    def fail(self, line: str) -> None:
        """Record a violated constraint; the first one becomes the headline."""
        if self.status == PASS:
            self.status = FAIL
        self.lines.append("FAIL: " + line)

    def check(self, ok: bool, what: str) -> bool:
        if ok:
            self.add("ok: " + what)
        else:
            self.fail(what)
        return ok


@dataclass
class Report:
    command: str
    sections: list[Section] = field(default_factory=list)
    error: str | None = None

    @property
    def status(self) -> str:
        if self.error is not None or any(s.status == ERROR for s in self.sections):
            return ERROR
        if any(s.status == FAIL for s in self.sections):
            return FAIL
        return PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def section(self, title: str) -> Section:
        s = Section(title)
        self.sections.append(s)
        return s

    def first_failure(self) -> str | None:
        for s in self.sections:
            if s.status != PASS:
                bad = next((ln for ln in s.lines if ln.startswith(("FAIL", "ERROR"))), "")
                return f"{s.title}: {bad}".rstrip(": ")
        return self.error


def to_json_value(x):
    """Exact values only: integers and fractions become decimal strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, _Matrix):
        return [[to_json_value(v) for v in row] for row in x.tolist()]
    if isinstance(x, np.ndarray):
        return to_json_value(x.tolist())
    if isinstance(x, dict):
        return {str(k): to_json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json_value(v) for v in x]
    raise TypeError(f"cannot serialise {type(x).__name__} exactly")


_MARK = {PASS: "✓", FAIL: "✗", ERROR: "!"}


def _text(report: Report) -> str:
    out = [f"blockcenter {report.command}: {report.status}"]
    for s in report.sections:
        out.append(f"{_MARK[s.status]} {s.title}")
        out.extend("    " + ln for ln in s.lines)
    if report.error:
        out.append(f"! error: {report.error}")
    if report.status != PASS:
        out.append(f"first problem: {report.first_failure()}")
    return "\n".join(out) + "\n"


def _json(report: Report) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "command": report.command,
        "status": report.status,
        "error": report.error,
        "first_failure": report.first_failure() if report.status != PASS else None,
        "sections": [
            {"title": s.title, "status": s.status, "lines": list(s.lines),
             "data": to_json_value(s.data)}
            for s in report.sections
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(report: Report, fmt: str = "text") -> bytes:
    if fmt == "json":
        return _json(report).encode("utf-8")
    if fmt == "text":
        return _text(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
