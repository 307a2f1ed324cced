"""Shared hypothesis strategies and small graph builders for the tests."""

from itertools import combinations

import networkx as nx
from hypothesis import strategies as st

from intcomp.graph import Graph
from intcomp.model import BEGIN, END, Event, model_graph


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph.from_edges(n, [p for p, b in zip(pairs, bits) if b])
    if connected:
        # chain the components so the result is connected
        from intcomp.graph import components

        comps = components(g)
        extra = [(min(a), min(b)) for a, b in zip(comps, comps[1:])]
        g = g.plus(extra)
    return g


@st.composite
def event_sequences(draw, min_n=1, max_n=7):
    """A random begin-before-end arrangement of ``n`` intervals."""
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations([Event(v, k) for v in range(n) for k in (BEGIN, END)]))
    begun = set()
    fixed = []
    pending = []
    for ev in order:
        if ev.kind == BEGIN:
            begun.add(ev.vertex)
            fixed.append(ev)
            fixed.extend(e for e in pending if e.vertex == ev.vertex)
            pending = [e for e in pending if e.vertex != ev.vertex]
        elif ev.vertex in begun:
            fixed.append(ev)
        else:
            pending.append(ev)
    return tuple(fixed)


@st.composite
def interval_graphs(draw, min_n=1, max_n=7):
    return model_graph(draw(event_sequences(min_n, max_n)))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, combinations(range(n), 2))
