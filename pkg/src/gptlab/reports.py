"""Pass/fail records for inequality checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _num(x) -> Any:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, float):
        return round(x, 12)
    return x


@dataclass(frozen=True)
class Inequality:
    """``lhs <= rhs + tol``; ``slack = rhs - lhs``."""

    name: str
    lhs: float | Fraction
    rhs: float | Fraction
    tol: float = 0.0

    @property
    def slack(self):
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tol

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "slack": _num(self.slack),
            "pass": self.passed,
        }


@dataclass
class Report:
    name: str
    checks: list[Inequality] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, name: str, lhs, rhs, tol: float = 0.0) -> Inequality:
        item = Inequality(name, lhs, rhs, tol)
        self.checks.append(item)
        return item

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[Inequality]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        out = {"name": self.name, "pass": self.passed, "checks": [c.to_dict() for c in self.checks]}
        if self.notes:
            out["notes"] = self.notes
        return out
