"""Structured pass/fail records for identity checks.

A mathematical identity that does not hold is data, not an exception, so every
checker returns a :class:`Report`.  Checks never short-circuit: all of them are
evaluated and each failure carries one concrete witness.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .linalg import LinMap, first_difference, format_scalar

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class Check:
    name: str
    status: str
    witness: dict | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.note:
            out["note"] = self.note
        return out


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    children: list["Report"] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    # recording ----------------------------------------------------------
    def equal(self, name: str, lhs: LinMap, rhs: LinMap, note: str = "") -> bool:
        """Record whether two maps agree; a mismatch stores the first
        differing entry.  Shape mismatches are recorded as failures too."""
        if lhs.shape != rhs.shape:
            self.checks.append(Check(name, FAIL, {"lhs_shape": list(lhs.shape), "rhs_shape": list(rhs.shape)}, note))
            return False
        diff = first_difference(lhs, rhs)
        if diff is None:
            self.checks.append(Check(name, PASS, None, note))
            return True
        row, col, a, b = diff
        self.checks.append(Check(name, FAIL, {"row": row, "col": col, "lhs": a, "rhs": b}, note))
        return False

    def require(self, name: str, condition: bool, witness: dict | None = None, note: str = "") -> bool:
        self.checks.append(Check(name, PASS if condition else FAIL, None if condition else witness, note))
        return bool(condition)

    def skip(self, name: str, reason: str) -> None:
        self.checks.append(Check(name, SKIPPED, None, reason))

    def add(self, child: "Report") -> "Report":
        self.children.append(child)
        return child

    def note(self, text: str) -> None:
        self.notes.append(text)

    # querying -----------------------------------------------------------
    def walk(self, prefix: str = "") -> Iterator[tuple[str, Check]]:
        path = f"{prefix}{self.title}"
        for c in self.checks:
            yield path, c
        for child in self.children:
            yield from child.walk(path + " / ")

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for _, c in self.walk())

    def failures(self) -> list[tuple[str, Check]]:
        return [(p, c) for p, c in self.walk() if c.status == FAIL]

    def first_failure(self) -> tuple[str, Check] | None:
        fails = self.failures()
        return fails[0] if fails else None

    def find(self, name: str) -> Check | None:
        """First check with the given name anywhere in the tree."""
        for _, c in self.walk():
            if c.name == name:
                return c
        return None

    def status_of(self, name: str) -> str | None:
        c = self.find(name)
        return c.status if c else None

    def names(self) -> set[str]:
        return {c.name for _, c in self.walk()}

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for _, c in self.walk():
            out[c.status] += 1
        return out

    # output -------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "status": PASS if self.ok else FAIL,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "facts": _jsonable(self.facts),
            "children": [c.to_dict() for c in self.children],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def render(self, indent: int = 0, failures_only: bool = False) -> str:
        pad = "  " * indent
        lines = [f"{pad}[{'PASS' if self.ok else 'FAIL'}] {self.title}"]
        for c in self.checks:
            if failures_only and c.status != FAIL:
                continue
            line = f"{pad}  {c.status:7s} {c.name}"
            if c.witness:
                line += "  " + json.dumps(_jsonable(c.witness))
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
        for n in self.notes:
            lines.append(f"{pad}  note: {n}")
        for child in self.children:
            lines.append(child.render(indent + 1, failures_only))
        return "\n".join(lines)


class ConditionError(Exception):
    """A constructor refused its input; ``report`` says which identity failed."""

    def __init__(self, report: Report):
        self.report = report
        first = report.first_failure()
        where = f"{first[0]}: {first[1].name}" if first else report.title
        super().__init__(f"condition failed at {where}")

    @property
    def failed_check(self) -> str | None:
        first = self.report.first_failure()
        return first[1].name if first else None


def gate(report: Report) -> Report:
    """Raise :class:`ConditionError` unless every check in ``report`` holds."""
    if not report.ok:
        raise ConditionError(report)
    return report
