import pytest
from hypothesis import given, settings, strategies as st

from helpers import cycle, graphs, path
from intcomp.corpus import named
from intcomp.dp import (
    DPError,
    FlatTerrace,
    ModelView,
    NestedTerrace,
    State,
    World,
    appears,
    base_case,
    best_completion,
    best_completion_brute,
    dp_reconstruct,
    event_order,
    generate_family,
    nested_violations,
    restriction,
    root_state,
    state_events,
    state_violations,
    terrace_from_model,
    world_from_model,
    world_violations,
)
from intcomp.graph import Graph, augment
from intcomp.model import BEGIN, END, Event
from intcomp.recognize import canonical_model
from intcomp.solvers import solve_oracle
from intcomp.suites import shifted


def view_of(g, f=(), k=None):
    ga = augment(g)
    fa = shifted(f)
    return ModelView(ga, fa, len(f) if k is None else k, canonical_model(ga.plus(fa)))


def canonical_view(g, k):
    res = solve_oracle(g, k)
    return view_of(g, res.canonical, k)


# -- worlds -------------------------------------------------------------------------


def test_root_world_is_whole_model():
    v = view_of(path(3))
    w = world_from_model(v, 0)
    n = v.g.n
    assert (w.v, w.omega_l, w.omega_r, w.p_l, w.p_r, w.partners) == (0, {0}, {0}, 1, 2 * n - 1, frozenset())


def test_world_of_p3_middle_vertex():
    v = view_of(path(3))
    w = world_from_model(v, 3)
    # canonical model 0+ 1+ 1- 2+ 3+ 2- 4+ 4- 3- 5+ 5- 0-: the right leaf closes before the centre
    assert str(v.m) == "0+ 1+ 1- 2+ 3+ 2- 4+ 4- 3- 5+ 5- 0-"
    assert w.omega_l == {0, 2, 3} and w.omega_r == {0, 3}
    assert world_violations(v.g, 0, w) == []


def test_world_of_c4_untouched_vertex():
    v = view_of(cycle(4), [(0, 2)])
    w = world_from_model(v, 3)
    assert world_violations(v.g, 1, w) == [] and appears(w, v.g, v.f, v.m)


def test_world_refuses_expensive_vertex():
    v = view_of(Graph.empty(4), [(0, 1), (0, 2), (0, 3)], k=3)
    with pytest.raises(ValueError):
        world_from_model(v, 2)


def test_world_clause_failures_are_named():
    v = view_of(path(3))
    w = world_from_model(v, 3)
    shifted_w = World.build(v.g, 3, w.omega_l, w.omega_r, w.p_l, w.p_r + 1, ())
    assert 3 in world_violations(v.g, 0, shifted_w)
    many = World.build(v.g, 3, w.omega_l, w.omega_r, w.p_l, w.p_r, (1, 5))
    assert 6 in world_violations(v.g, 1, many)


def test_world_does_not_appear_when_shifted():
    v = view_of(path(3))
    w = world_from_model(v, 3)
    moved = World.build(v.g, 3, w.omega_l, w.omega_r, w.p_l + 1, w.p_r + 1, ())
    assert appears(w, v.g, v.f, v.m)
    assert not appears(moved, v.g, v.f, v.m)


# -- terraces -------------------------------------------------------------------------


def test_terrace_of_single_vertex():
    v = view_of(Graph.empty(1))
    t = terrace_from_model(v, 2)
    assert t.outer1.v == t.outer2.v == 0 and t.domain == {1, 3}
    assert nested_violations(v.g, 0, t) == []


def test_terrace_of_p3_middle():
    v = view_of(path(3))
    t = terrace_from_model(v, 3)
    assert t.outer1.v == t.outer2.v == 0
    assert t.domain == {1, 5}


def test_terrace_sides_follow_the_model():
    v = view_of(Graph.empty(3))
    t = terrace_from_model(v, 3)
    assert dict(t.side) == {1: 1, 2: 1, 4: 2, 5: 2}
    assert appears(t, v.g, v.f, v.m)
    flipped = NestedTerrace(t.inner, t.outer1, t.outer2, tuple((w, 3 - s) for w, s in t.side))
    assert not appears(flipped, v.g, v.f, v.m)


def test_terrace_refuses_root():
    with pytest.raises(ValueError):
        terrace_from_model(view_of(path(2)), 0)


def test_appears_rejects_other_objects():
    v = view_of(path(2))
    with pytest.raises(TypeError):
        appears("world", v.g, v.f, v.m)


# -- states -------------------------------------------------------------------------


def test_root_state_events_are_all_but_root():
    v = view_of(cycle(4), [(0, 2)])
    s = root_state(v)
    want = {Event(u, kind) for u in range(1, v.g.n) for kind in (BEGIN, END)}
    assert state_events(s) == want and s.width == len(want)
    assert state_violations(s) == []


def test_state_with_equal_sides_and_no_interior_is_empty():
    v = view_of(path(3))
    w = world_from_model(v, 1)  # the left pendant: open only next to the root
    assert w.omega_l == w.omega_r == {0, 1} and w.interior == frozenset()
    t = FlatTerrace(w)
    s = State(t, t)
    assert state_events(s) == frozenset() and s.width == 0


def test_event_order_begins_up_then_ends_down():
    evs = [Event(3, END), Event(1, BEGIN), Event(2, END), Event(0, BEGIN)]
    assert event_order(evs) == [Event(0, BEGIN), Event(1, BEGIN), Event(3, END), Event(2, END)]


def test_base_case_threshold():
    assert base_case(10, 0, 10) and not base_case(11, 0, 10)
    assert base_case(8, 1, 1) and not base_case(9, 1, 1)
    assert base_case(4, 0, 0)


# -- completions of a state --------------------------------------------------------


def test_root_state_completion_is_canonical_model_on_c4():
    v = canonical_view(cycle(4), 1)
    s = root_state(v)
    c = best_completion(v.g, s)
    assert c.events == restriction(v.m, s)
    assert c.fill == v.f


SMALL = [path(3), cycle(4), named("claw"), path(4), Graph.empty(2), named("k2")]


@pytest.mark.parametrize("g", SMALL, ids=["p3", "c4", "claw", "p4", "2k1", "k2"])
def test_best_completion_matches_brute_force(g):
    v = canonical_view(g, 2)
    for s in generate_family(v, event_cap=1):
        if s.width <= 7:
            assert best_completion(v.g, s) == best_completion_brute(v.g, s)


@given(graphs(max_n=4), st.integers(0, 2))
@settings(max_examples=40)
def test_best_completion_matches_brute_force_on_random_graphs(g, k):
    res = solve_oracle(g, k)
    if not res.solved:
        return
    v = view_of(g, res.canonical, k)
    for s in generate_family(v, event_cap=1):
        if s.width <= 7:
            assert best_completion(v.g, s).key(s.p_l) == best_completion_brute(v.g, s).key(s.p_l)


# -- reconstruction -------------------------------------------------------------------


FIXTURE_NAMES = ["k1", "k2", "p3", "p4", "c4", "c5", "claw", "net", "k23"]


@pytest.mark.parametrize("name", FIXTURE_NAMES)
@pytest.mark.parametrize("event_cap", [1, 10])
def test_reconstruction_on_fixtures(name, event_cap):
    g = named(name)
    res = solve_oracle(g, 3)
    v = view_of(g, res.canonical, 3)
    r = dp_reconstruct(v.g, v.f, v.m, 3, event_cap)
    assert r.model == v.m and r.matches
    assert r.base_cells + r.glued_cells == r.states


def test_tiny_cap_forces_gluing():
    v = canonical_view(path(4), 0)
    r = dp_reconstruct(v.g, v.f, v.m, 0, event_cap=1)
    assert r.glued_cells > 0 and str(r.model) == str(v.m)


def test_base_case_only_when_root_fits():
    v = canonical_view(Graph.empty(1), 0)
    r = dp_reconstruct(v.g, v.f, v.m, 0, event_cap=10)
    assert r.states == 1 and r.glued_cells == 0 and r.model == v.m


def test_reconstruction_needs_augmented_graph():
    g = path(3)
    with pytest.raises(ValueError):
        dp_reconstruct(g, (), canonical_model(g), 0)


def test_family_states_appear_and_respect_event_identity():
    v = canonical_view(named("net"), 1)
    for s in generate_family(v, event_cap=1):
        assert appears(s, v.g, v.f, v.m)
        assert len(state_events(s)) == s.width
        assert set(restriction(v.m, s)) == state_events(s)


@given(graphs(max_n=5), st.integers(0, 3))
@settings(max_examples=40)
def test_reconstruction_property(g, k):
    res = solve_oracle(g, k)
    if not res.solved:
        return
    v = view_of(g, res.canonical, k)
    r = dp_reconstruct(v.g, v.f, v.m, k, event_cap=1)
    assert str(r.model) == str(v.m) and r.matches


def test_dp_error_is_runtime_error():
    assert issubclass(DPError, RuntimeError)
