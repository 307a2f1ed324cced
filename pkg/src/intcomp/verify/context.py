"""Completion-plus-model bundle that most checkers read from."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from ..graph import Graph
from ..graphio import format_graph6
from ..model import IntervalModel
from ..solvers import Completion, incidence, is_completion, normalize


def is_minimal_completion(g: Graph, f) -> bool:
    """``f`` is a completion and no proper subset of it is one."""
    f = normalize(f)
    if not is_completion(g, f):
        return False
    for size in range(len(f)):
        for sub in combinations(f, size):
            if is_completion(g, sub):
                return False
    return True


def instance_id(g: Graph, f=(), k: int | None = None, extra: str = "") -> str:
    parts = [format_graph6(g)]
    if f:
        parts.append("F=" + ",".join(f"{u}-{v}" for u, v in normalize(f)))
    if k is not None:
        parts.append(f"k={k}")
    if extra:
        parts.append(extra)
    return "|".join(parts)


@dataclass(frozen=True)
class Context:
    """Graph ``g``, completion ``f`` of it, budget ``k`` and a model ``m`` of ``g+f``."""

    g: Graph
    f: Completion
    k: int
    m: IntervalModel

    @cached_property
    def gf(self) -> Graph:
        return self.g.plus(self.f)

    @cached_property
    def deg(self) -> list[int]:
        return incidence(self.f, self.g.n)

    def cheap(self, v: int) -> bool:
        return self.deg[v] ** 2 <= self.k

    def untouched(self, v: int) -> bool:
        return self.deg[v] == 0

    def incident(self, v: int) -> frozenset[int]:
        return frozenset(b if a == v else a for a, b in self.f if v in (a, b))

    def first(self, vs) -> int:
        return min(self.m.begin(v) for v in vs)

    def last(self, vs) -> int:
        return max(self.m.end(v) for v in vs)

    @property
    def instance(self) -> str:
        return instance_id(self.g, self.f, self.k)
