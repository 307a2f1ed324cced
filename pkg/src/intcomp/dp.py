"""Worlds, terraces and states: windows of a model around cheap vertices, and
the gluing recurrence that rebuilds a canonical model from them.

All objects speak vertex ids of an augmented graph.  Positions follow the
model convention: events sit at ``1..2n`` and section ``p`` is what is open
just after position ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, NamedTuple, Union

from . import _search
from .graph import Graph, components, mask_of
from .model import BEGIN, END, Event, IntervalModel
from .solvers import Completion, incidence, normalize


class DPError(RuntimeError):
    """Raised when a structure built from a model breaks its own definition,
    or when the recurrence cannot fill a cell."""


def _sqrt_le(count: int, k: int, coeff: int = 1) -> bool:
    return count <= 0 or count * count <= coeff * coeff * k


# -- worlds -----------------------------------------------------------------


@dataclass(frozen=True)
class World:
    v: int
    omega_l: frozenset[int]
    omega_r: frozenset[int]
    p_l: int
    p_r: int
    partners: frozenset[int]  # w with vw an added pair
    closed: frozenset[int] = field(compare=False)  # v with its neighbours once the partners are added

    @classmethod
    def build(cls, g: Graph, v, omega_l, omega_r, p_l, p_r, partners) -> World:
        partners = frozenset(partners)
        return cls(v, frozenset(omega_l), frozenset(omega_r), p_l, p_r, partners,
                   g.closed_neighbors(v) | partners)

    @property
    def interior(self) -> frozenset[int]:
        return self.closed - (self.omega_l | self.omega_r)

    def area(self, side: int) -> Area:
        return Area(self.omega_l, self.omega_r, self.p_l, self.p_r, self.interior)

    def to_dict(self) -> dict:
        return {"v": self.v, "omega_l": sorted(self.omega_l), "omega_r": sorted(self.omega_r),
                "p_l": self.p_l, "p_r": self.p_r, "partners": sorted(self.partners)}


def world_violations(g: Graph, k: int, w: World) -> list[int]:
    """Numbers of the defining clauses that ``w`` fails."""
    bad = []
    ok1 = (0 <= w.v < g.n and 1 <= w.p_l <= w.p_r <= 2 * g.n - 1
           and all(u != w.v and not g.has_edge(u, w.v) for u in w.partners))
    if not ok1:
        bad.append(1)
    if w.v not in w.omega_l & w.omega_r:
        bad.append(2)
    sides = w.omega_l | w.omega_r
    if w.p_r - w.p_l != len(w.omega_l ^ w.omega_r) + 2 * len((w.closed - {w.v}) - sides):
        bad.append(3)
    if not sides <= w.closed:
        bad.append(4)
    nb = w.closed - {w.v}
    if any(comp & nb and not comp <= nb for comp in components(g, sides)):
        bad.append(5)
    if not _sqrt_le(len(w.partners), k):
        bad.append(6)
    return bad


# -- terraces ---------------------------------------------------------------


class Area(NamedTuple):
    omega_l: frozenset[int]
    omega_r: frozenset[int]
    p_l: int
    p_r: int
    interior: frozenset[int]


@dataclass(frozen=True)
class FlatTerrace:
    world: World

    def area(self, side: int) -> Area:
        return self.world.area(side)

    def to_dict(self) -> dict:
        return {"flat": self.world.to_dict()}


@dataclass(frozen=True)
class NestedTerrace:
    inner: World
    outer1: World
    outer2: World
    side: tuple[tuple[int, int], ...]  # sorted (vertex, 1 or 2)

    def area(self, which: int) -> Area:
        if which == 1:
            return Area(self.outer1.omega_l, self.inner.omega_l, self.outer1.p_l, self.inner.p_l,
                        frozenset(v for v, s in self.side if s == 1))
        return Area(self.inner.omega_r, self.outer2.omega_r, self.inner.p_r, self.outer2.p_r,
                    frozenset(v for v, s in self.side if s == 2))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.side)

    def to_dict(self) -> dict:
        return {"inner": self.inner.to_dict(), "outer1": self.outer1.to_dict(),
                "outer2": self.outer2.to_dict(), "side": [list(p) for p in self.side]}


Terrace = Union[FlatTerrace, NestedTerrace]


def nested_violations(g: Graph, k: int, t: NestedTerrace) -> list[str]:
    wi, w1, w2 = t.inner, t.outer1, t.outer2
    bad = []
    for name, w in (("inner", wi), ("outer1", w1), ("outer2", w2)):
        if world_violations(g, k, w):
            bad.append(f"{name} world invalid")
    if w1.v == wi.v or w2.v == wi.v:
        bad.append("inner vertex repeated as an outer vertex")
    if not w2.p_l <= w1.p_l < wi.p_l <= wi.p_r < w2.p_r <= w1.p_r:
        bad.append("positions not nested")
    # the inner vertex is open at both of its own ends; only enclosing vertices count
    spill = (wi.omega_l & wi.omega_r) - (w1.omega_l & w2.omega_r) - {wi.v}
    if not _sqrt_le(len(spill), k, 2):
        bad.append("more than 2*sqrt(k) inner section vertices escape the outer sections")
    if t.domain != (w1.interior & w2.interior) - wi.closed:
        bad.append("side map has the wrong domain")
    sides = dict(t.side)
    for u in t.domain:
        for w in g.neighbors(u) & t.domain:
            if sides[u] != sides[w]:
                bad.append("side map splits a component")
                return bad
    return bad


# -- states -----------------------------------------------------------------


@dataclass(frozen=True)
class State:
    t1: Terrace
    t2: Terrace

    @property
    def left(self) -> Area:
        return self.t1.area(2)

    @property
    def right(self) -> Area:
        return self.t2.area(1)

    @property
    def p_l(self) -> int:
        return self.left.p_l

    @property
    def p_r(self) -> int:
        return self.right.p_r

    @property
    def omega_l(self) -> frozenset[int]:
        return self.left.omega_l

    @property
    def omega_r(self) -> frozenset[int]:
        return self.right.omega_r

    @property
    def interior(self) -> frozenset[int]:
        return self.left.interior & self.right.interior

    @property
    def span(self) -> frozenset[int]:
        return self.interior | self.omega_l | self.omega_r

    @property
    def width(self) -> int:
        return self.p_r - self.p_l

    def to_dict(self) -> dict:
        return {"p_l": self.p_l, "p_r": self.p_r, "omega_l": sorted(self.omega_l),
                "omega_r": sorted(self.omega_r), "interior": sorted(self.interior)}


def state_violations(s: State) -> list[str]:
    bad = []
    if not s.right.p_l <= s.left.p_l < s.right.p_r <= s.left.p_r:
        bad.append("terrace areas do not interleave")
    if s.width != 2 * len(s.interior) + len(s.omega_l ^ s.omega_r):
        bad.append("width differs from the event count")
    return bad


def state_events(s: State) -> frozenset[Event]:
    out = set()
    for v in s.interior:
        out.add(Event(v, BEGIN))
        out.add(Event(v, END))
    out.update(Event(v, END) for v in s.omega_l - s.omega_r)
    out.update(Event(v, BEGIN) for v in s.omega_r - s.omega_l)
    return frozenset(out)


def event_order(events: Iterable[Event]) -> list[Event]:
    """Begins by increasing vertex, then ends by decreasing vertex."""
    events = list(events)
    return (sorted(e for e in events if e.kind == BEGIN)
            + sorted((e for e in events if e.kind == END), reverse=True))


# -- appearance in a model ------------------------------------------------------


def _partners(f: Iterable[tuple[int, int]], v: int) -> frozenset[int]:
    return frozenset(b if a == v else a for a, b in f if v in (a, b))


def appears(obj, g: Graph, f, m: IntervalModel) -> bool:
    f = normalize(f)
    if isinstance(obj, World):
        return (obj.partners == _partners(f, obj.v)
                and obj.p_l == m.begin(obj.v) and obj.p_r == m.end(obj.v) - 1
                and obj.omega_l == m.section(obj.p_l) and obj.omega_r == m.section(obj.p_r))
    if isinstance(obj, FlatTerrace):
        return appears(obj.world, g, f, m)
    if isinstance(obj, NestedTerrace):
        if not all(appears(w, g, f, m) for w in (obj.inner, obj.outer1, obj.outer2)):
            return False
        if obj.domain != (obj.outer1.interior & obj.outer2.interior) - obj.inner.closed:
            return False
        start = m.begin(obj.inner.v)
        return all((m.end(w) < start) == (s == 1) for w, s in obj.side)
    if isinstance(obj, State):
        return appears(obj.t1, g, f, m) and appears(obj.t2, g, f, m)
    raise TypeError(f"cannot test appearance of {type(obj).__name__}")


# -- constructors from a model ------------------------------------------------------


@dataclass(frozen=True)
class ModelView:
    """Graph, completion, budget and model of ``g + f`` read by the constructors."""

    g: Graph
    f: Completion
    k: int
    m: IntervalModel

    def __post_init__(self) -> None:
        object.__setattr__(self, "_deg", incidence(self.f, self.g.n))

    def cheap(self, v: int) -> bool:
        return self._deg[v] ** 2 <= self.k


def world_from_model(view: ModelView, v: int) -> World:
    if not view.cheap(v):
        raise ValueError(f"vertex {v} is not cheap")
    m = view.m
    pl, pr = m.begin(v), m.end(v) - 1
    w = World.build(view.g, v, m.section(pl), m.section(pr), pl, pr, _partners(view.f, v))
    bad = world_violations(view.g, view.k, w)
    if bad:
        raise DPError(f"world of {v} fails clauses {bad}")
    return w


def enclosing_pair(view: ModelView, x: int) -> tuple[int, int]:
    m = view.m
    outer = [y for y in range(view.g.n)
             if view.cheap(y) and m.begin(y) < m.begin(x) and m.end(x) < m.end(y)]
    if not outer:
        raise DPError(f"no cheap vertex encloses {x}")
    return max(outer, key=m.begin), min(outer, key=m.end)


def terrace_from_model(view: ModelView, x: int) -> NestedTerrace:
    g, m = view.g, view.m
    if g.special is not None and x == g.special.root:
        raise ValueError("the universal vertex has no enclosing terrace")
    y1, y2 = enclosing_pair(view, x)
    wx, w1, w2 = world_from_model(view, x), world_from_model(view, y1), world_from_model(view, y2)
    bx, ex = m.begin(x), m.end(x)
    x1 = {w for w in range(g.n) if m.begin(y1) < m.begin(w) and m.end(w) < bx}
    x2 = {w for w in range(g.n) if ex < m.begin(w) and m.end(w) < m.end(y2)}
    side = tuple(sorted([(w, 1) for w in x1] + [(w, 2) for w in x2]))
    t = NestedTerrace(wx, w1, w2, side)
    bad = nested_violations(g, view.k, t)
    if bad:
        raise DPError(f"terrace of {x} invalid: {bad}")
    return t


# -- completions of a state ------------------------------------------------------


@dataclass(frozen=True)
class StateCompletion:
    events: tuple[Event, ...]  # the events at positions p_l+1 .. p_r
    fill: Completion

    def key(self, p_l: int) -> tuple:
        pos = {e: p_l + i + 1 for i, e in enumerate(self.events)}
        return (len(self.fill), self.fill, tuple(pos[e] for e in event_order(self.events)))


def completion_fill(g: Graph, s: State, events: Iterable[Event]) -> Completion | None:
    """Added pairs when ``events`` fill the state's window, or ``None`` if not a completion."""
    seq = ([Event(v, BEGIN) for v in sorted(s.omega_l)] + list(events)
           + [Event(v, END) for v in sorted(s.omega_r, reverse=True)])
    begin, end = {}, {}
    for i, (v, kind) in enumerate(seq):
        slot = begin if kind == BEGIN else end
        if v in slot:
            return None
        slot[v] = i
    span = sorted(s.span)
    if set(begin) != set(span) or set(end) != set(span):
        return None
    if any(begin[v] > end[v] for v in span):
        return None
    fill = []
    for i, u in enumerate(span):
        for v in span[i + 1:]:
            overlap = not (end[u] < begin[v] or end[v] < begin[u])
            if g.has_edge(u, v):
                if not overlap:
                    return None
            elif overlap:
                fill.append((u, v))
    return tuple(fill)


def best_completion(g: Graph, s: State) -> StateCompletion:
    """The least completion by (size of fill, fill pairs, event positions).

    First the smallest fill over all arrangements, then the earliest
    placement of the window's events among arrangements realising exactly
    that fill.
    """
    span = sorted(s.span)
    sub, ids = g.induced(span)
    local = {v: i for i, v in enumerate(ids)}
    prefix = mask_of(local[v] for v in s.omega_l)
    suffix = mask_of(local[v] for v in s.omega_r)
    fill = _search.ConstrainedSearch(sub.n, sub.adj, prefix, suffix, fill=True).min_fill()
    if fill is None:
        raise DPError("state has no completion")
    h = sub.plus(fill)
    order = [(local[e.vertex], e.kind) for e in event_order(state_events(s))]
    seq = _search.ConstrainedSearch(h.n, h.adj, prefix, suffix).lexmin(order)
    if seq is None:
        raise DPError("least fill admits no arrangement")
    middle = seq[len(s.omega_l):len(seq) - len(s.omega_r)]
    events = tuple(Event(ids[v], kind) for v, kind in middle)
    if frozenset(events) != state_events(s):
        raise DPError("arrangement leaks events across the window borders")
    return StateCompletion(events, normalize((ids[u], ids[v]) for u, v in fill))


def best_completion_brute(g: Graph, s: State) -> StateCompletion:
    """Same as :func:`best_completion` by trying every ordering; tiny states only."""
    best = None
    for perm in permutations(sorted(state_events(s))):
        fill = completion_fill(g, s, perm)
        if fill is None:
            continue
        cand = StateCompletion(tuple(perm), fill)
        if best is None or cand.key(s.p_l) < best.key(s.p_l):
            best = cand
    if best is None:
        raise DPError("state has no completion")
    return best


# -- family generation and the recurrence ------------------------------------------------------


def base_case(events: int, k: int, event_cap: int) -> bool:
    """``events <= max(4*sqrt(k)+4, event_cap)``."""
    return events <= event_cap or events <= 4 or (events - 4) ** 2 <= 16 * k


def pivot(view: ModelView, s: State) -> int | None:
    """Cheap vertex of the window covering most of it; ties go to interior vertices, then smaller ids."""
    m = view.m
    inner = s.interior
    best = None
    for x in (s.omega_l ^ s.omega_r) | inner:
        if not view.cheap(x):
            continue
        score = min(m.end(x), s.p_r + 1) - max(m.begin(x), s.p_l)
        key = (score, x in inner, -x)
        if best is None or key > best[0]:
            best = (key, x)
    return None if best is None else best[1]


def split(view: ModelView, s: State, x: int) -> list[State]:
    flat = FlatTerrace(world_from_model(view, x))
    nested = terrace_from_model(view, x)
    if x in s.interior:
        parts = [State(s.t1, nested), State(flat, flat), State(nested, s.t2)]
    elif x in s.omega_l:
        parts = [State(s.t1, flat), State(nested, s.t2)]
    else:
        parts = [State(s.t1, nested), State(flat, s.t2)]
    # a window holding no events is dropped; its neighbours already meet
    return [p for p in parts if p.p_l < p.p_r]


def root_state(view: ModelView) -> State:
    r = view.g.special.root
    t = FlatTerrace(world_from_model(view, r))
    return State(t, t)


def generate_family(view: ModelView, event_cap: int) -> list[State]:
    """States reached from the root by repeatedly splitting at the pivot.

    Splitting stops at base-case states.  Every generated state is checked
    against its definition and for appearance in the model.
    """
    root = root_state(view)
    seen: dict[State, None] = {}
    stack = [root]
    while stack:
        s = stack.pop()
        if s in seen:
            continue
        bad = state_violations(s)
        if bad:
            raise DPError(f"generated state {s.to_dict()} invalid: {bad}")
        if not appears(s, view.g, view.f, view.m):
            raise DPError(f"generated state {s.to_dict()} does not appear in the model")
        seen[s] = None
        if base_case(s.width, view.k, event_cap):
            continue
        x = pivot(view, s)
        if x is None:
            continue
        stack.extend(reversed(split(view, s, x)))
    return list(seen)


@dataclass
class DPResult:
    model: IntervalModel
    table: dict[State, StateCompletion]
    states: int
    base_cells: int
    glued_cells: int
    mismatched_cells: list[State]

    @property
    def matches(self) -> bool:
        return not self.mismatched_cells


def restriction(m: IntervalModel, s: State) -> tuple[Event, ...]:
    return tuple(m.at(p) for p in range(s.p_l + 1, s.p_r + 1))


def fill_table(g: Graph, k: int, family: list[State], event_cap: int) -> tuple[dict, int, int]:
    """Compute the cell of every state, narrowest first."""
    index: dict[tuple[int, frozenset[int]], list[State]] = {}
    for s in family:
        index.setdefault((s.p_l, s.omega_l), []).append(s)
    table: dict[State, StateCompletion] = {}
    events = {s: state_events(s) for s in family}
    base = glued = 0
    for s in sorted(family, key=lambda s: s.width):
        if base_case(s.width, k, event_cap):
            table[s] = best_completion(g, s)
            base += 1
            continue
        best = None
        for chain in _chains(s, index, events):
            seq = tuple(e for part in chain for e in table[part].events)
            fill = completion_fill(g, s, seq)
            if fill is None:
                continue
            cand = StateCompletion(seq, fill)
            if best is None or cand.key(s.p_l) < best.key(s.p_l):
                best = cand
        if best is None:
            raise DPError(f"no glued completion for state {s.to_dict()}: substates missing from the family")
        table[s] = best
        glued += 1
    return table, base, glued


def _chains(s: State, index, events):
    """Sequences of two or three narrower states tiling the window of ``s``."""
    target = events[s]

    def fits(part: State) -> bool:
        return part.width < s.width and events[part] <= target

    for a in index.get((s.p_l, s.omega_l), ()):
        if not fits(a) or a.p_r >= s.p_r:
            continue
        for b in index.get((a.p_r, a.omega_r), ()):
            if not fits(b) or b.p_r > s.p_r or events[a] & events[b]:
                continue
            if b.p_r == s.p_r:
                if b.omega_r == s.omega_r and events[a] | events[b] == target:
                    yield (a, b)
                continue
            for c in index.get((b.p_r, b.omega_r), ()):
                if (fits(c) and c.p_r == s.p_r and c.omega_r == s.omega_r
                        and not (events[c] & (events[a] | events[b]))
                        and events[a] | events[b] | events[c] == target):
                    yield (a, b, c)


def dp_reconstruct(g: Graph, f, m: IntervalModel, k: int, event_cap: int = 10) -> DPResult:
    """Rebuild ``m`` (canonical model of ``g+f``, ``f`` canonical) from glued state cells."""
    if g.special is None:
        raise ValueError("graph must be augmented")
    view = ModelView(g, normalize(f), k, m)
    family = generate_family(view, event_cap)
    table, base, glued = fill_table(g, k, family, event_cap)
    root = root_state(view)
    r = g.special.root
    events = (Event(r, BEGIN),) + table[root].events + (Event(r, END),)
    rebuilt = IntervalModel(events)
    mismatched = [s for s in family if table[s].events != restriction(m, s)]
    return DPResult(rebuilt, table, len(family), base, glued, mismatched)
