"""Undirected simple graphs over dense ids ``0..n-1``.

The integer order of ids is the fixed total vertex order used to break every
tie in the package (canonical models, canonical completions, enumeration
order).  Adjacency is stored as one bitmask per vertex; public functions
speak ``frozenset[int]`` so callers never touch the masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

VertexSet = frozenset
Pair = tuple[int, int]


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset[int]:
    return frozenset(members(mask))


def pair(u: int, v: int) -> Pair:
    if u == v:
        raise ValueError(f"self-pair ({u}, {v})")
    return (u, v) if u < v else (v, u)


class Special(NamedTuple):
    """Ids of the universal vertex and its two pendants added by :func:`augment`."""

    root: int
    left: int
    right: int


@dataclass(frozen=True, eq=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    special: Special | None = None

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, row in enumerate(self.adj):
            if row >> self.n:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in members(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], special: Special | None = None) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), special)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> frozenset[int]:
        return set_of(self.adj[v])

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return set_of(self.adj[v] | 1 << v)

    def neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        """Open neighbourhood of a set: its neighbours outside the set."""
        s = mask_of(vertices)
        out = 0
        for v in members(s):
            out |= self.adj[v]
        return set_of(out & ~s)

    def closed_neighborhood(self, vertices: Iterable[int]) -> frozenset[int]:
        s = mask_of(vertices)
        out = s
        for v in members(s):
            out |= self.adj[v]
        return set_of(out)

    def edges(self) -> Iterator[Pair]:
        for u in range(self.n):
            for v in members(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def non_edges(self) -> list[Pair]:
        """Non-adjacent pairs in the lexicographic pair order."""
        return [(u, v) for u, v in combinations(range(self.n), 2) if not self.adj[u] >> v & 1]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        s = mask_of(vertices)
        return all((s & ~(1 << v)) & ~self.adj[v] == 0 for v in members(s))

    def plus(self, extra: Iterable[Pair]) -> Graph:
        """``G+F``: the graph with the pairs of ``extra`` added as edges."""
        rows = list(self.adj)
        for u, v in extra:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if rows[u] >> v & 1:
                raise ValueError(f"({u}, {v}) is already an edge")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, tuple(rows), self.special)

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph relabelled densely in id order, plus the old ids."""
        keep = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            rows.append(mask_of(index[u] for u in members(self.adj[v]) if u in index))
        special = None
        if self.special is not None and all(s in index for s in self.special):
            special = Special(*(index[s] for s in self.special))
        return Graph(len(keep), tuple(rows), special), keep

    def without(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def is_connected(self) -> bool:
        return len(components(self)) <= 1


def components(g: Graph, excluded: Iterable[int] = ()) -> list[frozenset[int]]:
    """Vertex sets of the connected components of ``g`` minus ``excluded``.

    Components are listed by their smallest vertex.
    """
    alive = g.full_mask & ~mask_of(excluded)
    out = []
    while alive:
        seed = alive & -alive
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in members(frontier):
                grow |= g.adj[v]
            frontier = grow & alive & ~comp
            comp |= frontier
        alive &= ~comp
        out.append(set_of(comp))
    return out


def augment(g: Graph) -> Graph:
    """Add a universal vertex and two pendants hanging off it.

    New ids: universal vertex 0, left pendant 1, old vertex ``v`` becomes
    ``v + 2``, right pendant ``n + 2``; this realises the required order
    universal < left < originals < right.
    """
    if g.special is not None:
        raise ValueError("graph is already augmented")
    n = g.n + 3
    root, left, right = 0, 1, g.n + 2
    edges = [(u + 2, v + 2) for u, v in g.edges()]
    edges += [(root, v) for v in range(1, n)]
    return Graph.from_edges(n, edges, Special(root, left, right))


def strip_augmentation(g: Graph) -> Graph:
    """Inverse of :func:`augment` (ids shift back down by two)."""
    if g.special is None:
        raise ValueError("graph is not augmented")
    sub, _ = g.without(g.special)
    return sub


def neighborhood_classes(g: Graph, a: Iterable[int]) -> list[frozenset[int]]:
    """Partition of ``V \\ a`` by the trace ``N(v) & a``; classes by smallest member."""
    am = mask_of(a)
    classes: dict[int, int] = {}
    for v in range(g.n):
        if am >> v & 1:
            continue
        key = g.adj[v] & am
        classes[key] = classes.get(key, 0) | 1 << v
    return sorted((set_of(c) for c in classes.values()), key=min)


def count_low_deficiency_components(g: Graph, a: Iterable[int], r: int) -> int:
    """Components ``C`` of ``g - a`` having a vertex that misses at most ``r`` vertices of ``a``."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    am = mask_of(a)
    count = 0
    for comp in components(g, members(am)):
        if any((am & ~g.adj[v]).bit_count() <= r for v in comp):
            count += 1
    return count
