import networkx as nx
import pytest
from hypothesis import given, strategies as st

from helpers import complete, cycle, graphs, path, to_nx
from intcomp.graph import (
    Graph,
    Special,
    augment,
    components,
    count_low_deficiency_components,
    mask_of,
    members,
    neighborhood_classes,
    pair,
    strip_augmentation,
)
from intcomp.graphio import (
    FormatError,
    format_edge_list,
    format_graph6,
    iter_graph6,
    parse_edge_list,
    parse_graph6,
    read_graph,
)


def test_components_of_path_minus_inner_vertex():
    assert components(path(4), {1}) == [frozenset({0}), frozenset({2, 3})]


def test_components_with_everything_excluded_is_empty():
    g = cycle(5)
    assert components(g, range(5)) == []


def test_components_of_cycle_minus_opposite_pair():
    assert components(cycle(4), {0, 2}) == [frozenset({1}), frozenset({3})]


@given(graphs(max_n=8), st.data())
def test_components_match_networkx(g, data):
    excluded = data.draw(st.sets(st.integers(0, g.n - 1)))
    h = to_nx(g)
    h.remove_nodes_from(excluded)
    expected = sorted((frozenset(c) for c in nx.connected_components(h)), key=min)
    assert components(g, excluded) == expected


def test_augment_single_vertex():
    ga = augment(Graph.empty(1))
    assert ga.n == 4
    assert set(ga.edges()) == {(0, 1), (0, 2), (0, 3)}
    assert ga.special == Special(0, 1, 3)


def test_augment_empty_graph():
    ga = augment(Graph.empty(0))
    assert ga.n == 3
    assert set(ga.edges()) == {(0, 1), (0, 2)}


def test_augment_edge():
    ga = augment(Graph.from_edges(2, [(0, 1)]))
    assert ga.n == 5
    assert set(ga.edges()) == {(2, 3), (0, 2), (0, 3), (0, 1), (0, 4)}


@given(graphs(max_n=8))
def test_augment_then_strip_is_identity(g):
    ga = augment(g)
    r, left, right = ga.special
    assert r < left < min(range(2, g.n + 2), default=right) and right == ga.n - 1
    assert ga.neighbors(r) == frozenset(range(1, ga.n))
    assert ga.neighbors(left) == ga.neighbors(right) == frozenset({r})
    assert strip_augmentation(ga) == g


def test_augment_rejects_augmented_graph():
    with pytest.raises(ValueError):
        augment(augment(path(2)))


def test_neighborhood_classes_examples():
    assert neighborhood_classes(path(4), {1, 2}) == [frozenset({0}), frozenset({3})]
    assert neighborhood_classes(path(4), set()) == [frozenset(range(4))]
    assert neighborhood_classes(complete(4), {0}) == [frozenset({1, 2, 3})]


@given(graphs(max_n=8), st.data())
def test_neighborhood_classes_partition_by_trace(g, data):
    a = frozenset(data.draw(st.sets(st.integers(0, g.n - 1))))
    classes = neighborhood_classes(g, a)
    assert frozenset().union(*classes) == frozenset(range(g.n)) - a
    assert sum(map(len, classes)) == g.n - len(a)
    traces = [g.neighbors(min(c)) & a for c in classes]
    assert len(set(traces)) == len(traces)
    for c, t in zip(classes, traces):
        assert all(g.neighbors(v) & a == t for v in c)


def test_low_deficiency_examples():
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert count_low_deficiency_components(star, {0}, 1) == 3
    assert count_low_deficiency_components(cycle(6), {0, 3}, 1) == 2


@given(graphs(max_n=8), st.integers(1, 3))
def test_low_deficiency_with_empty_set_counts_components(g, r):
    assert count_low_deficiency_components(g, set(), r) == len(components(g))


def test_low_deficiency_rejects_zero_threshold():
    with pytest.raises(ValueError):
        count_low_deficiency_components(path(3), {1}, 0)


@given(graphs(max_n=8))
def test_basic_accessors_agree_with_networkx(g):
    h = to_nx(g)
    assert g.m == h.number_of_edges()
    for v in range(g.n):
        assert g.neighbors(v) == frozenset(h[v])
        assert g.degree(v) == h.degree(v)
    assert g.is_connected() == (g.n == 0 or nx.is_connected(h))
    assert set(g.complement().edges()) == {tuple(sorted(e)) for e in nx.complement(h).edges}
    assert g.non_edges() == sorted(set(pair(u, v) for u in range(g.n) for v in range(u + 1, g.n)) - set(g.edges()))


def test_mask_roundtrip():
    assert list(members(mask_of([5, 0, 3]))) == [0, 3, 5]


def test_graph_rejects_asymmetric_adjacency():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))


def test_graph_rejects_self_loop():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1)])


# -- input/output --------------------------------------------------------------


@given(graphs(max_n=9))
def test_edge_list_roundtrip(g):
    assert parse_edge_list(format_edge_list(g)) == g


@given(graphs(max_n=12))
def test_graph6_matches_networkx(g):
    text = format_graph6(g)
    assert text == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert parse_graph6(text) == g


def test_edge_list_errors():
    for bad in ["", "2 1\n0 5\n", "2 2\n0 1\n", "x y\n", "2 1\n0 0\n"]:
        with pytest.raises(FormatError):
            parse_edge_list(bad)


def test_edge_list_cap():
    with pytest.raises(FormatError):
        parse_edge_list("5 0\n", cap=4)


def test_read_graph_by_suffix(tmp_path):
    g = cycle(5)
    (tmp_path / "c5.el").write_text(format_edge_list(g))
    (tmp_path / "c5.g6").write_text(format_graph6(g) + "\n")
    assert read_graph(tmp_path / "c5.el") == g
    assert read_graph(tmp_path / "c5.g6") == g


def test_iter_graph6_skips_blank_lines():
    lines = [format_graph6(path(3)), "", format_graph6(cycle(4))]
    assert list(iter_graph6(lines)) == [path(3), cycle(4)]
