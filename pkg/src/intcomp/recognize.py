"""Recognition, canonical models and models with prescribed end cliques."""

from __future__ import annotations

from dataclasses import dataclass

from . import _search
from .graph import Graph, components, mask_of
from .model import BEGIN, END, Event, IntervalModel


@dataclass(frozen=True)
class NotInterval:
    """Rejection carrying a vertex-minimal induced non-interval subgraph."""

    witness: frozenset[int]


class NotIntervalError(ValueError):
    pass


def is_interval_graph(g: Graph) -> bool:
    return _search.is_interval(g.n, g.adj)


def _any_model(g: Graph) -> IntervalModel | None:
    order = _search.interval_begin_order(g.n, g.adj)
    if order is None:
        return None
    return IntervalModel(tuple(Event(*ev) for ev in _search.sequence_from_begin_order(g.adj, order)))


def minimal_witness(g: Graph) -> frozenset[int]:
    """Delete vertices in id order while the rest stays non-interval.

    Interval graphs are closed under induced subgraphs, so a single pass
    leaves a set every proper induced subgraph of which is interval.
    """
    keep = set(range(g.n))
    for v in range(g.n):
        sub, _ = g.induced(keep - {v})
        if not is_interval_graph(sub):
            keep.discard(v)
    return frozenset(keep)


def recognize(g: Graph) -> IntervalModel | NotInterval:
    m = _any_model(g)
    if m is not None:
        return m
    return NotInterval(minimal_witness(g))


def canonical_order(n: int) -> list[tuple[int, int]]:
    """Events in the order the canonical tuple lists their positions."""
    return [(v, BEGIN) for v in range(n)] + [(v, END) for v in reversed(range(n))]


def canonical_model(g: Graph) -> IntervalModel:
    """The model whose tuple of begin positions (by id) then end positions
    (by decreasing id) is lexicographically smallest."""
    seq = _search.ConstrainedSearch(g.n, g.adj).lexmin(canonical_order(g.n))
    if seq is None:
        raise NotIntervalError("graph is not an interval graph")
    return IntervalModel(tuple(Event(*ev) for ev in seq))


def has_prescribed_model(g: Graph, omega1, omega2) -> bool:
    """Direct search for a model opening with ``omega1`` and closing with ``omega2``.

    Independent of :func:`model_with_prescribed_cliques`; used to cross-check it.
    """
    s1, s2 = mask_of(omega1), mask_of(omega2)
    return _search.ConstrainedSearch(g.n, g.adj, prefix=s1, suffix=s2).exists()


def _check_clique(g: Graph, omega: frozenset[int], name: str) -> None:
    if any(not 0 <= v < g.n for v in omega):
        raise ValueError(f"{name} has vertices outside the graph")
    if not g.is_clique(omega):
        raise ValueError(f"{name}={sorted(omega)} is not a clique")


def _tidy_blocks(events: list[Event], omega1: frozenset[int], omega2: frozenset[int]) -> list[Event]:
    """Sort the leading begins of ``omega1`` by id and the trailing ends of ``omega2`` by decreasing id."""
    a, b = len(omega1), len(omega2)
    head = sorted(events[:a]) if a else []
    tail = sorted(events[len(events) - b:], reverse=True) if b else []
    return head + events[a:len(events) - b] + tail


def model_with_prescribed_cliques(g: Graph, omega1, omega2) -> IntervalModel | None:
    """A model starting with all begins of ``omega1`` and ending with all ends of ``omega2``.

    Returns ``None`` when no such model exists.  Works by hanging a
    three-vertex path off each clique and recognising the enlarged graph; the
    way each path is drawn tells whether the model (or each end component)
    has to be reversed.
    """
    omega1, omega2 = frozenset(omega1), frozenset(omega2)
    _check_clique(g, omega1, "omega1")
    _check_clique(g, omega2, "omega2")
    if g.n == 0:
        return IntervalModel(())
    comps = components(g)
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    c1 = comp_of[min(omega1)] if omega1 else None
    c2 = comp_of[min(omega2)] if omega2 else None
    if len(comps) > 1 and c1 is not None and c1 == c2:
        return None

    # H = G plus x1-x2-x3 on omega1 and y1-y2-y3 on omega2
    n = g.n
    edges = list(g.edges())
    path_ids = {}
    for tag, omega in (("x", omega1), ("y", omega2)):
        if not omega:
            continue
        p1, p2, p3 = n, n + 1, n + 2
        n += 3
        edges += [(p1, p2), (p2, p3)] + [(p1, v) for v in omega]
        path_ids[tag] = (p1, p2)
    h = Graph.from_edges(n, edges)
    hm = _any_model(h)
    if hm is None:
        return None

    def starts_with_clique(tag: str) -> bool:
        # the (i) drawing: the middle path vertex opens before the attached one
        p1, p2 = path_ids[tag]
        return hm.begin(p2) < hm.begin(p1)

    restricted = list(hm.restricted(range(g.n)))
    flip = lambda evs: [Event(v, 1 - k) for v, k in reversed(evs)]  # noqa: E731

    if len(comps) == 1:
        first_ok = starts_with_clique("x") if omega1 else None
        last_ok = not starts_with_clique("y") if omega2 else None
        if first_ok is False or (first_ok is None and last_ok is False):
            restricted = flip(restricted)
        out = restricted
    else:
        def part(ci: int) -> list[Event]:
            return [ev for ev in restricted if comp_of[ev.vertex] == ci]

        head = []
        if c1 is not None:
            head = part(c1)
            if not starts_with_clique("x"):
                head = flip(head)
        tail = []
        if c2 is not None:
            tail = part(c2)
            if starts_with_clique("y"):
                tail = flip(tail)
        middle = [ev for ev in restricted if comp_of[ev.vertex] not in (c1, c2)]
        out = head + middle + tail
    out = _tidy_blocks(out, omega1, omega2)
    a, b = len(omega1), len(omega2)
    if {ev for ev in out[:a]} != {Event(v, BEGIN) for v in omega1} or (
        b and {ev for ev in out[-b:]} != {Event(v, END) for v in omega2}
    ):
        raise AssertionError("path gadget drawing did not pin the prescribed cliques")
    return IntervalModel.of(g, out)
