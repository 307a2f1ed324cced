"""Modular decomposition and the module reduction rule."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .graph import Graph, components, mask_of, members, set_of
from .recognize import is_interval_graph

LEAF, UNION, JOIN, PRIME = "leaf", "union", "join", "prime"


@dataclass(frozen=True)
class ModuleNode:
    label: frozenset[int]
    kind: str
    children: tuple[ModuleNode, ...] = ()

    def walk(self) -> Iterator[ModuleNode]:
        """Preorder, children in order of their smallest vertex."""
        yield self
        for c in self.children:
            yield from c.walk()

    def to_dict(self) -> dict:
        return {
            "label": sorted(self.label),
            "kind": self.kind,
            "children": [c.to_dict() for c in self.children],
        }


def is_module(g: Graph, vertices: Iterable[int]) -> bool:
    m = mask_of(vertices)
    outside = g.full_mask & ~m
    traces = {g.adj[v] & outside for v in members(m)}
    return len(traces) <= 1


def _splitter_closure(g: Graph, seed: int, universe: int) -> int:
    """Smallest module of ``g[universe]`` containing ``seed``."""
    m = seed
    while True:
        grow = 0
        for w in members(universe & ~m):
            seen = g.adj[w] & m
            if seen and seen != m:
                grow |= 1 << w
        if not grow:
            return m
        m |= grow


def _co_components(g: Graph, label: int) -> list[int]:
    rest = label
    out = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in members(frontier):
                grow |= label & ~g.adj[v] & ~(1 << v)
            frontier = grow & rest & ~comp
            comp |= frontier
        rest &= ~comp
        out.append(comp)
    return out


def _decompose(g: Graph, label: int) -> ModuleNode:
    if label & (label - 1) == 0:
        return ModuleNode(set_of(label), LEAF)
    sub, ids = g.induced(members(label))
    comps = components(sub)
    if len(comps) > 1:
        parts = [mask_of(ids[i] for i in c) for c in comps]
        kind = UNION
    else:
        parts = _co_components(g, label)
        kind = JOIN
        if len(parts) == 1:
            kind = PRIME
            parts = []
            left = label
            while left:
                v = (left & -left).bit_length() - 1
                part = 1 << v
                for u in members(label & ~(1 << v)):
                    if _splitter_closure(g, 1 << v | 1 << u, label) != label:
                        part |= 1 << u
                parts.append(part)
                left &= ~part
    parts.sort(key=lambda p: (p & -p))
    return ModuleNode(set_of(label), kind, tuple(_decompose(g, p) for p in parts))


def decompose(g: Graph) -> ModuleNode:
    if g.n < 1:
        raise ValueError("decomposition needs at least one vertex")
    return _decompose(g, g.full_mask)


def all_modules(g: Graph) -> list[frozenset[int]]:
    """Every non-empty module by subset enumeration; small graphs only."""
    return [set_of(s) for s in range(1, 1 << g.n) if is_module(g, members(s))]


@dataclass(frozen=True)
class RuleApplication:
    x: frozenset[int]
    modules: tuple[frozenset[int], ...]
    removed: frozenset[int] | None  # None means the instance was refuted
    no_instance: bool = False

    def to_dict(self) -> dict:
        return {
            "x": sorted(self.x),
            "modules": [sorted(m) for m in self.modules],
            "removed": None if self.removed is None else sorted(self.removed),
            "no_instance": self.no_instance,
        }


def find_rule_application(g: Graph, k: int, tree: ModuleNode | None = None) -> RuleApplication | None:
    """First union node (preorder) with at least ``2k+3`` equal-neighbourhood children.

    Every child of a union node is a component of ``G - N(child)`` and a
    module of ``G``, so grouping children by neighbourhood finds all rule
    applications the decomposition exposes.
    """
    if g.n == 0:
        return None
    tree = decompose(g) if tree is None else tree
    need = 2 * k + 3
    for node in tree.walk():
        if node.kind != UNION or len(node.children) < need:
            continue
        groups: dict[frozenset[int], list[frozenset[int]]] = {}
        for child in node.children:
            groups.setdefault(g.neighborhood(child.label), []).append(child.label)
        for x, mods in sorted(groups.items(), key=lambda kv: min(kv[1][0])):
            if len(mods) < need:
                continue
            interval = [m for m in mods if is_interval_graph(g.induced(m)[0])]
            if len(mods) - len(interval) > k:
                return RuleApplication(x, tuple(mods), None, True)
            removed = max(interval, key=min)
            return RuleApplication(x, tuple(mods), removed)
    return None


@dataclass(frozen=True)
class Reduction:
    graph: Graph | None  # None when the rule refuted the instance
    kept: tuple[int, ...]  # original ids of the surviving vertices
    trace: tuple[RuleApplication, ...] = field(default=())

    @property
    def no_instance(self) -> bool:
        return self.graph is None


def reduce_exhaustively(g: Graph, k: int) -> Reduction:
    """Apply the rule until it stops firing; the trace speaks original ids."""
    cur = g
    kept = tuple(range(g.n))
    trace: list[RuleApplication] = []
    while True:
        app = find_rule_application(cur, k)
        if app is None:
            return Reduction(cur, kept, tuple(trace))
        back = lambda s: frozenset(kept[v] for v in s)  # noqa: E731
        step = RuleApplication(
            back(app.x),
            tuple(back(m) for m in app.modules),
            None if app.removed is None else back(app.removed),
            app.no_instance,
        )
        trace.append(step)
        if app.no_instance:
            return Reduction(None, kept, tuple(trace))
        cur, idx = cur.without(app.removed)
        kept = tuple(kept[i] for i in idx)


def check_module_stays(g: Graph, f: Iterable[tuple[int, int]], m: Iterable[int]) -> bool:
    """Whether the connected module ``m`` of ``g`` is still a module once ``f`` is added."""
    m = frozenset(m)
    if not m or not is_module(g, m) or len(components(g.induced(m)[0])) != 1:
        raise ValueError(f"{sorted(m)} is not a connected module")
    return is_module(g.plus(f), m)
