"""Instance streams: exhaustive isomorphism classes, seeded random graphs, fixtures."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator

from .config import DEFAULT
from .graph import Graph, members

EXHAUSTIVE, RANDOM, NEAR_INTERVAL, NAMED, STARS = "exhaustive", "random", "near-interval", "named", "stars"
KINDS = (EXHAUSTIVE, RANDOM, NEAR_INTERVAL, NAMED, STARS)


def _refined_cells(g: Graph) -> list[list[int]]:
    """Ordered vertex partition from iterated degree refinement.

    The colouring is computed from isomorphism-invariant data only, so
    restricting relabellings to ones that respect the cell order still
    reaches the same minimum for isomorphic graphs.
    """
    colour = [g.degree(v) for v in range(g.n)]
    while True:
        keys = [(colour[v], tuple(sorted(colour[u] for u in members(g.adj[v])))) for v in range(g.n)]
        palette = {key: i for i, key in enumerate(sorted(set(keys)))}
        new = [palette[key] for key in keys]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def _code(g: Graph, order: tuple[int, ...]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    return tuple(sum(1 << pos[w] for w in members(g.adj[v])) for v in order)


def canonical_form(g: Graph) -> tuple[tuple[int, ...], Graph]:
    """Minimum relabelled adjacency over cell-respecting relabellings.

    Returns the code and the relabelled representative graph; isomorphic
    inputs produce identical outputs.
    """
    cells = _refined_cells(g)
    best = None
    best_order = None
    for parts in product(*(permutations(c) for c in cells)):
        order = tuple(v for part in parts for v in part)
        code = _code(g, order)
        if best is None or code < best:
            best, best_order = code, order
    if best_order is None:
        return (), g
    pos = {v: i for i, v in enumerate(best_order)}
    rep = Graph.from_edges(g.n, [(pos[u], pos[v]) for u, v in g.edges()])
    return best, rep


def brute_force_canonical_form(g: Graph) -> tuple[int, ...]:
    """Minimum over all ``n!`` relabellings; reference for small ``n``."""
    return min((_code(g, order) for order in permutations(range(g.n))), default=())


@lru_cache(maxsize=None)
def _all_classes(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class on ``n`` vertices."""
    if n == 0:
        return (Graph.empty(0),)
    seen: dict[tuple[int, ...], Graph] = {}
    for h in _all_classes(n - 1):
        base = list(h.edges())
        for nb in range(1 << (n - 1)):
            g = Graph.from_edges(n, base + [(u, n - 1) for u in members(nb)])
            code, rep = canonical_form(g)
            seen.setdefault(code, rep)
    return tuple(seen[c] for c in sorted(seen))


def exhaustive(n: int, connected: bool = True, cap: int | None = None) -> Iterator[Graph]:
    cap = DEFAULT.vertex_cap if cap is None else cap
    if n > min(cap, 9):
        raise ValueError(f"exhaustive generation is limited to 9 vertices and the cap {cap}")
    for g in _all_classes(n):
        if not connected or g.is_connected():
            yield g


def exhaustive_upto(nmax: int, connected: bool = True, nmin: int = 1) -> Iterator[Graph]:
    for n in range(nmin, nmax + 1):
        yield from exhaustive(n, connected)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_stream(n: int, p: float, seed: int, count: int) -> Iterator[Graph]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_graph(n, p, rng)


def near_interval_stream(seed: int, count: int, nmin: int = 5, nmax: int = 12,
                         missing: tuple[float, float] = (2.0, 8.0)) -> Iterator[Graph]:
    """Dense random graphs: ``n`` uniform in ``[nmin, nmax]``, edge probability
    set so the expected number of non-edges is uniform in ``missing``.

    Optima then mostly fall within small budgets, which keeps exact solvers
    cheap and the comparison informative.
    """
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(nmin, nmax)
        pairs = n * (n - 1) // 2
        p = max(0.0, 1.0 - rng.uniform(*missing) / pairs) if pairs else 1.0
        yield random_graph(n, p, rng)


def _cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(m: int) -> Graph:
    """``K_{1,m}`` with centre 0."""
    return Graph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


FIXTURES = {
    "k1": lambda: Graph.empty(1),
    "k2": lambda: Graph.from_edges(2, [(0, 1)]),
    "p3": lambda: _path(3),
    "p4": lambda: _path(4),
    "c4": lambda: _cycle(4),
    "c5": lambda: _cycle(5),
    "c6": lambda: _cycle(6),
    "claw": lambda: Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]),
    "net": lambda: Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]),
    "k23": lambda: Graph.from_edges(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)]),
    "c4+c4": lambda: Graph.from_edges(8, [(i, (i + 1) % 4) for i in range(4)]
                                      + [(4 + i, 4 + (i + 1) % 4) for i in range(4)]),
    # 2-subdivided claw: the smallest tree that is not a caterpillar
    "long-claw": lambda: Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]),
}


def named(name: str) -> Graph:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}") from None


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    k: int = 0
    n: int = 0
    p: float = 0.5
    seed: int = 0
    count: int = 1
    name: str = ""
    connected: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown instance kind {self.kind!r}")
        if self.kind == NAMED and not self.name:
            raise ValueError("named instances need a fixture name")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("edge probability must lie in [0, 1]")


def generate(spec: InstanceSpec, cap: int | None = None) -> Iterator[Graph]:
    cap = DEFAULT.vertex_cap if cap is None else cap
    if spec.kind == NAMED:
        g = named(spec.name)
        if g.n > cap:
            raise ValueError(f"fixture has {g.n} vertices, above the cap {cap}")
        yield g
        return
    if spec.n > cap:
        raise ValueError(f"n={spec.n} above the cap {cap}")
    if spec.kind == EXHAUSTIVE:
        yield from exhaustive(spec.n, spec.connected, cap)
    elif spec.kind == RANDOM:
        yield from random_stream(spec.n, spec.p, spec.seed, spec.count)
    elif spec.kind == NEAR_INTERVAL:
        yield from near_interval_stream(spec.seed, spec.count, nmin=min(5, spec.n), nmax=spec.n)
    else:
        for m in range(1, spec.n):
            yield star(m)
