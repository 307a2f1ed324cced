"""Combinatorial interval models: event permutations, sections, cliques."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .graph import Graph, mask_of, members, set_of

BEGIN = 0
END = 1


class Event(NamedTuple):
    vertex: int
    kind: int  # BEGIN or END

    def __str__(self) -> str:
        return f"{self.vertex}{'+' if self.kind == BEGIN else '-'}"

    @property
    def is_begin(self) -> bool:
        return self.kind == BEGIN


def begin(v: int) -> Event:
    return Event(v, BEGIN)


def end(v: int) -> Event:
    return Event(v, END)


def events_of(vertices: Iterable[int]) -> frozenset[Event]:
    out = set()
    for v in vertices:
        out.add(Event(v, BEGIN))
        out.add(Event(v, END))
    return frozenset(out)


def parse_event(token: str) -> Event:
    if len(token) < 2 or token[-1] not in "+-":
        raise ValueError(f"bad event token {token!r}")
    return Event(int(token[:-1]), BEGIN if token[-1] == "+" else END)


class InvalidModel(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


@dataclass(frozen=True)
class Violation:
    kind: str  # "order", "adjacent-disjoint" or "nonadjacent-overlap"
    vertices: tuple[int, ...]

    def __str__(self) -> str:
        what = {
            "order": "ends before it begins",
            "adjacent-disjoint": "are adjacent but their intervals are disjoint",
            "nonadjacent-overlap": "are non-adjacent but their intervals intersect",
        }[self.kind]
        return f"{', '.join(map(str, self.vertices))} {what}"


def _positions(events: Sequence[Event], n: int) -> tuple[list[int], list[int]]:
    if len(events) != 2 * n:
        raise ValueError(f"a model of {n} vertices has {2 * n} events, got {len(events)}")
    b = [0] * n
    e = [0] * n
    for i, (v, kind) in enumerate(events, start=1):
        if not 0 <= v < n:
            raise ValueError(f"event {Event(v, kind)} names a vertex outside 0..{n - 1}")
        slot = b if kind == BEGIN else e
        if slot[v]:
            raise ValueError(f"event {Event(v, kind)} occurs twice")
        slot[v] = i
    return b, e


def validate_model(g: Graph, events: Sequence[Event]) -> Violation | None:
    """``None`` if ``events`` is an interval model of ``g``, else the first violation."""
    b, e = _positions(events, g.n)
    for v in range(g.n):
        if b[v] > e[v]:
            return Violation("order", (v,))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            disjoint = e[u] < b[v] or e[v] < b[u]
            if g.has_edge(u, v) and disjoint:
                return Violation("adjacent-disjoint", (u, v))
            if not g.has_edge(u, v) and not disjoint:
                return Violation("nonadjacent-overlap", (u, v))
    return None


def model_graph(events: Sequence[Event]) -> Graph:
    """The interval graph represented by a begin-before-end event sequence."""
    n = len(events) // 2
    b, e = _positions(events, n)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not (e[u] < b[v] or e[v] < b[u])]
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class IntervalModel:
    """Bijection between the ``2n`` events and positions ``1..2n``.

    Stored as the event sequence in position order.  Construct through
    :meth:`of` to have validity against a graph checked.
    """

    events: tuple[Event, ...]
    _begin: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _end: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.events) // 2
        b, e = _positions(self.events, n)
        object.__setattr__(self, "_begin", tuple(b))
        object.__setattr__(self, "_end", tuple(e))

    @classmethod
    def of(cls, g: Graph, events: Iterable[Event]) -> IntervalModel:
        events = tuple(Event(*ev) for ev in events)
        bad = validate_model(g, events)
        if bad is not None:
            raise InvalidModel(bad)
        return cls(events)

    @classmethod
    def parse(cls, text: str) -> IntervalModel:
        return cls(tuple(parse_event(tok) for tok in text.split()))

    def __str__(self) -> str:
        return " ".join(map(str, self.events))

    @property
    def n(self) -> int:
        return len(self._begin)

    def begin(self, v: int) -> int:
        return self._begin[v]

    def end(self, v: int) -> int:
        return self._end[v]

    def position(self, event: Event) -> int:
        return self._begin[event.vertex] if event.kind == BEGIN else self._end[event.vertex]

    def at(self, p: int) -> Event:
        return self.events[p - 1]

    def section(self, p: int) -> frozenset[int]:
        """Vertices whose interval is pinned just after position ``p``."""
        return frozenset(v for v in range(self.n) if self._begin[v] <= p < self._end[v])

    def first(self, vertices: Iterable[int]) -> int:
        """First position holding an event of ``vertices``."""
        return min(self._begin[v] for v in vertices)

    def last(self, vertices: Iterable[int]) -> int:
        return max(self._end[v] for v in vertices)

    def contains(self, outer: int, inner: int) -> bool:
        """Strict nesting of ``inner``'s interval inside ``outer``'s."""
        return self._begin[outer] < self._begin[inner] and self._end[inner] < self._end[outer]

    def key(self) -> tuple[int, ...]:
        """Begin positions by increasing id, then end positions by decreasing id."""
        return self._begin + self._end[::-1]

    def reversed(self) -> IntervalModel:
        return IntervalModel(tuple(Event(v, 1 - k) for v, k in reversed(self.events)))

    def restricted(self, vertices: Iterable[int]) -> tuple[Event, ...]:
        keep = set(vertices)
        return tuple(ev for ev in self.events if ev.vertex in keep)


def section(m: IntervalModel, p: int) -> frozenset[int]:
    if not 0 <= p <= 2 * m.n:
        raise ValueError(f"position {p} outside 0..{2 * m.n}")
    return m.section(p)


def maximal_clique_positions(m: IntervalModel) -> list[int]:
    """Positions ``p`` holding a begin event directly followed by an end event."""
    ev = m.events
    return [p for p in range(1, len(ev)) if ev[p - 1].kind == BEGIN and ev[p].kind == END]


def maximal_cliques_of_model(m: IntervalModel) -> list[tuple[frozenset[int], int]]:
    return [(m.section(p), p) for p in maximal_clique_positions(m)]


def brute_force_maximal_cliques(g: Graph) -> set[frozenset[int]]:
    """All maximal cliques by subset enumeration; meant for small test graphs."""
    cliques = []
    for s in range(1, 1 << g.n):
        if all((s & ~(1 << v)) & ~g.adj[v] == 0 for v in members(s)):
            cliques.append(s)
    maximal = set()
    for s in cliques:
        ext = g.full_mask & ~s
        grow = False
        for v in members(ext):
            if s & ~g.adj[v] == 0:
                grow = True
                break
        if not grow:
            maximal.add(set_of(s))
    return maximal


def clique_mask(g: Graph, vertices: Iterable[int]) -> int:
    s = mask_of(vertices)
    if not g.is_clique(members(s)):
        raise ValueError(f"{sorted(members(s))} is not a clique")
    return s
