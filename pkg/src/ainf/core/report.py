"""Diagnostic reports returned by every checker.

A report keeps the first offending input per arity together with a total
violation count; complete listings are kept only when ``verbose`` is set,
since the number of words grows exponentially with the arity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable


@dataclass(frozen=True)
class Violation:
    arity: int
    word: tuple
    residual: Any
    clause: str | None = None
    fiber: str | None = None  # module basis label for representation checks

    def to_json(self, fmt: Callable[[Any], Any]) -> dict:
        out = {"arity": self.arity, "word": list(self.word), "residual": fmt(self.residual)}
        if self.clause is not None:
            out["clause"] = self.clause
        if self.fiber is not None:
            out["fiber"] = self.fiber
        return out


@dataclass
class Report:
    max_arity: int
    verbose: bool = False
    violations: list[Violation] = field(default_factory=list)
    count: int = 0
    _seen: set = field(default_factory=set, repr=False)

    def add(self, v: Violation) -> None:
        self.count += 1
        key = (v.clause, v.arity)
        if self.verbose or key not in self._seen:
            self._seen.add(key)
            self.violations.append(v)

    def extend(self, other: "Report") -> None:
        for v in other.violations:
            self.add(v)
        self.count += other.count - len(other.violations)

    @property
    def valid(self) -> bool:
        return self.count == 0

    def __bool__(self):
        # a report is truthy when something is wrong, mirroring a nonempty list
        return not self.valid

    @property
    def arities(self) -> list[int]:
        return sorted({v.arity for v in self.violations})

    @property
    def clauses(self) -> set:
        return {v.clause for v in self.violations}

    def first_arity(self) -> int | None:
        return min((v.arity for v in self.violations), default=None)

    def to_json(self, fmt: Callable[[Any], Any]) -> dict:
        return {
            "valid": self.valid,
            "max_arity": self.max_arity,
            "violation_count": self.count,
            "violations": [v.to_json(fmt) for v in self.violations],
        }


def run_check(max_arity: int, cases: Iterable[tuple], verbose: bool = False,
              clause: str | None = None, report: Report | None = None) -> Report:
    """Collect ``(arity, word, residual[, fiber])`` cases with nonzero residual."""
    rep = report if report is not None else Report(max_arity, verbose)
    for case in cases:
        arity, word, residual = case[:3]
        fiber = case[3] if len(case) > 3 else None
        if residual:
            rep.add(Violation(arity, tuple(word), residual, clause, fiber))
    return rep
