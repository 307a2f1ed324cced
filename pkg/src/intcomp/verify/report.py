"""Verdict records shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

HOLDS = "holds"
VIOLATED = "violated"
PRECONDITION_FAILED = "precondition_failed"


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    instance: str
    verdict: str
    details: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.verdict not in (HOLDS, VIOLATED, PRECONDITION_FAILED):
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "instance": self.instance, "verdict": self.verdict,
                "details": _jsonable(self.details)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def holds(lemma: str, instance: str, **details) -> LemmaReport:
    return LemmaReport(lemma, instance, HOLDS, details)


def violated(lemma: str, instance: str, **details) -> LemmaReport:
    return LemmaReport(lemma, instance, VIOLATED, details)


def precondition_failed(lemma: str, instance: str, reason: str, **details) -> LemmaReport:
    return LemmaReport(lemma, instance, PRECONDITION_FAILED, {"reason": reason, **details})


@dataclass
class Summary:
    checked: int = 0
    holds: int = 0
    violated: int = 0
    skipped: int = 0

    def add(self, reports: Iterable[LemmaReport]) -> None:
        for r in reports:
            self.checked += 1
            if r.verdict == HOLDS:
                self.holds += 1
            elif r.verdict == VIOLATED:
                self.violated += 1
            else:
                self.skipped += 1

    def line(self) -> str:
        return f"checked={self.checked} holds={self.holds} violated={self.violated} skipped={self.skipped}"

    def to_dict(self) -> dict:
        return {"checked": self.checked, "holds": self.holds, "violated": self.violated, "skipped": self.skipped}
