"""Exact interval completion: exhaustive oracle and witness branching.

Completions are tuples of sorted pairs, themselves sorted; comparing two such
tuples of equal length with ``<`` is the order used to pick the canonical
solution among all minimum ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

from . import _search
from .config import DEFAULT
from .graph import Graph, members
from .model import IntervalModel
from .modular import reduce_exhaustively
from .recognize import canonical_model

Completion = tuple[tuple[int, int], ...]

SOLVED = "solved"
OVER_BUDGET = "over_budget"


def normalize(f: Iterable[tuple[int, int]]) -> Completion:
    return tuple(sorted((min(u, v), max(u, v)) for u, v in f))


def _with_pairs(adj: tuple[int, ...], f: Iterable[tuple[int, int]]) -> list[int]:
    rows = list(adj)
    for u, v in f:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return rows


def is_completion(g: Graph, f: Iterable[tuple[int, int]]) -> bool:
    f = list(f)
    if any(g.has_edge(u, v) or u == v for u, v in f):
        return False
    return _search.is_interval(g.n, _with_pairs(g.adj, f))


@dataclass(frozen=True)
class SolveResult:
    graph: Graph
    k: int
    status: str
    opt: int | None
    canonical: Completion | None
    minimum: tuple[Completion, ...] | None = None
    all_minimal: tuple[Completion, ...] | None = None
    solution: Completion | None = field(default=None)

    @property
    def solved(self) -> bool:
        return self.status == SOLVED

    @cached_property
    def canonical_model(self) -> IntervalModel | None:
        if self.canonical is None:
            return None
        return canonical_model(self.graph.plus(self.canonical))

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "k": self.k,
            "opt": self.opt,
            "canonical": None if self.canonical is None else [list(p) for p in self.canonical],
        }
        if self.canonical is not None:
            out["canonical_model"] = str(self.canonical_model)
        if self.all_minimal is not None:
            out["all_minimal"] = [[list(p) for p in f] for f in self.all_minimal]
        return out


def solve_oracle(g: Graph, k: int, all_minimal: bool = False, cap: int | None = None) -> SolveResult:
    """Try every set of non-edges by size, then in pair order; the first hit is canonical.

    With ``all_minimal`` the enumeration continues through size ``k`` and
    records every minimum completion and every inclusion-minimal completion.
    """
    cap = DEFAULT.oracle_cap if cap is None else cap
    if g.n > cap:
        raise ValueError(f"oracle limited to {cap} vertices, graph has {g.n}")
    if k < 0:
        raise ValueError("budget must be non-negative")
    cand = g.non_edges()
    n, adj = g.n, g.adj
    opt = None
    canonical = None
    minimum: list[Completion] = []
    minimal: list[Completion] = []
    minimal_masks: list[frozenset] = []
    for size in range(0, min(k, len(cand)) + 1):
        for f in combinations(cand, size):
            if minimal_masks and all_minimal:
                fs = frozenset(f)
                if any(m <= fs for m in minimal_masks):
                    continue
            if not _search.is_interval(n, _with_pairs(adj, f)):
                continue
            if opt is None:
                opt, canonical = size, f
                if not all_minimal:
                    return SolveResult(g, k, SOLVED, opt, canonical, solution=canonical)
            if size == opt:
                minimum.append(f)
            minimal.append(f)
            minimal_masks.append(frozenset(f))
    if opt is None:
        return SolveResult(g, k, OVER_BUDGET, None, None)
    return SolveResult(
        g, k, SOLVED, opt, canonical,
        minimum=tuple(minimum), all_minimal=tuple(minimal), solution=canonical,
    )


def _witness(n: int, rows: list[int]) -> int | None:
    """Vertex-minimal non-interval induced subgraph as a mask, or ``None``."""
    if _search.is_interval(n, rows):
        return None
    keep = (1 << n) - 1
    for v in range(n):
        trial = keep & ~(1 << v)
        sub_ids = list(members(trial))
        index = {u: i for i, u in enumerate(sub_ids)}
        sub = [0] * len(sub_ids)
        for u in sub_ids:
            for w in members(rows[u] & trial):
                sub[index[u]] |= 1 << index[w]
        if not _search.is_interval(len(sub_ids), sub):
            keep = trial
    return keep


def _branch(n: int, adj, budget: int, collect: bool):
    """Depth-first search for a completion of size at most ``budget``.

    Every completion must add a non-edge inside any non-interval induced
    subgraph, so branching on those non-edges of a minimal witness is
    exhaustive.  With ``collect`` all solutions reachable within the budget
    are gathered instead of stopping at the first.
    """
    seen: set[frozenset] = set()
    found: list[Completion] = []

    def go(f: frozenset, left: int) -> bool:
        rows = _with_pairs(adj, f)
        w = _witness(n, rows)
        if w is None:
            found.append(normalize(f))
            return not collect
        if left == 0:
            return False
        for u in members(w):
            for v in members(w & ~rows[u] & ~((1 << (u + 1)) - 1)):
                f2 = f | {(u, v)}
                if f2 in seen:
                    continue
                seen.add(f2)
                if go(f2, left - 1):
                    return True
        return False

    go(frozenset(), budget)
    return found


def solve_branching(g: Graph, k: int, canonical: bool = False) -> SolveResult:
    """Iterative deepening over the budget with the reduction rule applied first.

    With ``canonical`` the search tree at depth ``opt`` is explored fully on
    the unreduced graph to recover the pair-order smallest minimum solution.
    """
    if k < 0:
        raise ValueError("budget must be non-negative")
    for b in range(k + 1):
        red = reduce_exhaustively(g, b)
        if red.no_instance:
            continue
        h = red.graph
        sols = _branch(h.n, h.adj, b, collect=False)
        if not sols:
            continue
        sol = normalize((red.kept[u], red.kept[v]) for u, v in sols[0])
        if len(sol) != b or not is_completion(g, sol):
            raise AssertionError(f"branching returned {sol}, not a size-{b} completion")
        canon = None
        if canonical:
            canon = min(s for s in _branch(g.n, g.adj, b, collect=True) if len(s) == b)
        return SolveResult(g, k, SOLVED, b, canon, solution=sol)
    return SolveResult(g, k, OVER_BUDGET, None, None)


@dataclass(frozen=True)
class VertexClass:
    touched: bool
    cheap: bool

    def to_dict(self) -> dict:
        return {"touched": self.touched, "cheap": self.cheap}


def incidence(f: Iterable[tuple[int, int]], n: int) -> list[int]:
    deg = [0] * n
    for u, v in f:
        deg[u] += 1
        deg[v] += 1
    return deg


def classify_vertices(g: Graph, f: Iterable[tuple[int, int]], k: int) -> dict[int, VertexClass]:
    """Touched: some added pair at the vertex.  Cheap: at most sqrt(k) of them."""
    deg = incidence(f, g.n)
    return {v: VertexClass(deg[v] > 0, deg[v] * deg[v] <= k) for v in range(g.n)}
