from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from helpers import complete, cycle, graphs, interval_graphs, path
from intcomp.corpus import named
from intcomp.graph import Graph
from intcomp.recognize import canonical_model, is_interval_graph
from intcomp.solvers import (
    OVER_BUDGET,
    SOLVED,
    classify_vertices,
    incidence,
    is_completion,
    normalize,
    solve_branching,
    solve_oracle,
)


def brute_minimal_completions(g, k):
    """All inclusion-minimal completions of size at most k, straight from the definition."""
    hits = [frozenset(f) for r in range(k + 1) for f in combinations(g.non_edges(), r)
            if is_interval_graph(g.plus(f))]
    return sorted(tuple(sorted(f)) for f in hits if not any(h < f for h in hits))


def test_c4_oracle():
    r = solve_oracle(cycle(4), 2)
    assert r.status == SOLVED and r.opt == 1 and r.canonical == ((0, 2),)
    assert str(r.canonical_model) == "0+ 1+ 2+ 1- 3+ 3- 2- 0-"


def test_p4_needs_nothing():
    r = solve_oracle(path(4), 0)
    assert r.opt == 0 and r.canonical == ()


def test_c5_needs_two():
    assert solve_oracle(cycle(5), 3).opt == 2
    assert solve_oracle(cycle(5), 1).status == OVER_BUDGET


def test_net_branching():
    assert solve_branching(named("net"), 3).opt == 1


def test_k23_branching_matches_oracle():
    g = named("k23")
    assert solve_branching(g, 3).opt == solve_oracle(g, 3).opt == 1


def test_two_c4s_need_two():
    g = named("c4+c4")
    assert solve_branching(g, 2).opt == solve_oracle(g, 2).opt == 2
    assert solve_branching(g, 1).status == OVER_BUDGET


def test_oracle_cap_and_negative_budget():
    with pytest.raises(ValueError):
        solve_oracle(path(5), 1, cap=4)
    with pytest.raises(ValueError):
        solve_oracle(path(3), -1)
    with pytest.raises(ValueError):
        solve_branching(path(3), -1)


def test_over_budget_result_is_empty():
    r = solve_branching(cycle(4), 0)
    assert r.status == OVER_BUDGET and r.opt is None and r.canonical is None
    assert r.to_dict()["status"] == OVER_BUDGET


@given(graphs(max_n=7), st.integers(0, 3))
def test_branching_agrees_with_oracle(g, k):
    a, b = solve_oracle(g, k), solve_branching(g, k)
    assert a.status == b.status and a.opt == b.opt
    if b.solved:
        assert len(b.solution) == b.opt and is_completion(g, b.solution)


@given(graphs(max_n=6), st.integers(0, 3))
def test_canonical_is_pair_order_minimum(g, k):
    r = solve_oracle(g, k)
    if not r.solved:
        return
    sized = [f for f in combinations(g.non_edges(), r.opt) if is_completion(g, f)]
    assert r.canonical == min(sized)
    assert solve_branching(g, k, canonical=True).canonical == r.canonical


@given(graphs(max_n=6), st.integers(0, 3))
@settings(max_examples=80)
def test_all_minimal_matches_definition(g, k):
    r = solve_oracle(g, k, all_minimal=True)
    if not r.solved:
        assert brute_minimal_completions(g, k) == []
        return
    assert sorted(r.all_minimal) == brute_minimal_completions(g, k)
    assert set(r.minimum) == {f for f in r.all_minimal if len(f) == r.opt}
    for f in r.all_minimal:
        for e in f:
            assert not is_completion(g, [p for p in f if p != e])


@given(graphs(max_n=7), st.integers(0, 3))
def test_solution_touches_few_vertices(g, k):
    r = solve_oracle(g, k)
    if not r.solved:
        return
    cls = classify_vertices(g, r.canonical, k)
    assert sum(c.touched for c in cls.values()) <= 2 * k
    e = sum(not c.cheap for c in cls.values())
    assert e * e <= 4 * k


@given(interval_graphs(max_n=8))
def test_interval_graphs_have_zero_opt(g):
    assert solve_oracle(g, 0).opt == solve_branching(g, 0).opt == 0


def test_solver_output_is_deterministic():
    g = named("k23")
    assert solve_oracle(g, 2).to_dict() == solve_oracle(g, 2).to_dict()


def test_canonical_model_field():
    g = cycle(4)
    r = solve_oracle(g, 1)
    assert r.canonical_model == canonical_model(g.plus(r.canonical))


def test_classify_empty_completion():
    cls = classify_vertices(complete(3), [], 2)
    assert all(not c.touched and c.cheap for c in cls.values())


def test_classify_c4_chord():
    cls = classify_vertices(cycle(4), [(0, 2)], 1)
    assert cls[0].touched and cls[0].cheap and cls[2].touched and cls[2].cheap
    assert not cls[1].touched and not cls[3].touched


def test_classify_star_center_expensive():
    g = Graph.empty(4)
    cls = classify_vertices(g, [(0, 1), (0, 2), (0, 3)], 4)
    assert not cls[0].cheap and cls[1].cheap
    assert incidence([(0, 1), (0, 2)], 3) == [2, 1, 1]


def test_normalize_and_is_completion():
    assert normalize([(2, 0), (1, 0)]) == ((0, 1), (0, 2))
    assert not is_completion(cycle(4), [(0, 1)])  # already an edge
    assert is_completion(cycle(4), [(1, 3)])
