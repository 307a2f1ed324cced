import json

import pytest
from hypothesis import given, settings, strategies as st

from helpers import cycle, graphs, interval_graphs, path
from intcomp.graph import Graph, augment
from intcomp.model import IntervalModel, maximal_clique_positions
from intcomp.recognize import canonical_model
from intcomp.suites import shifted
from intcomp.verify import (
    HOLDS,
    PRECONDITION_FAILED,
    VIOLATED,
    LemmaReport,
    Summary,
    clique_anatomy,
    verify_bounds,
    verify_canonical_laws,
    verify_clique_characterization,
    verify_fill_in_structure,
    verify_module_stays,
    verify_section_reconstruction,
    verify_small_separation,
)
from intcomp.verify.bounds import class_bound, low_deficiency_bound, verify_class_bound
from intcomp.verify.context import Context, is_minimal_completion
from intcomp.verify.laws import check_component_order, check_endpoint_order
from intcomp.verify.separation import admissible_triples, sweep_small_separation


def setup(g, f=()):
    ga = augment(g)
    fa = shifted(f)
    return ga, fa, canonical_model(ga.plus(fa))


def max_cliques(m):
    return [m.section(p) for p in maximal_clique_positions(m)]


def inner_cliques(ga, m):
    pendant = {ga.special.left, ga.special.right}
    return [c for c in max_cliques(m) if not c & pendant]


# -- reports -------------------------------------------------------------------


def test_report_rejects_unknown_verdict():
    with pytest.raises(ValueError):
        LemmaReport("x", "y", "maybe")


def test_summary_counts_and_serialises():
    s = Summary()
    s.add([LemmaReport("a", "1", HOLDS), LemmaReport("a", "2", VIOLATED, {"s": {3, 1}}),
           LemmaReport("a", "3", PRECONDITION_FAILED)])
    assert s.line() == "checked=3 holds=1 violated=1 skipped=1"
    assert LemmaReport("a", "2", VIOLATED, {"s": {3, 1}}).to_dict()["details"] == {"s": [1, 3]}


# -- minimality ----------------------------------------------------------------


def test_minimality_certificate():
    assert is_minimal_completion(cycle(4), [(0, 2)])
    assert not is_minimal_completion(cycle(4), [(0, 2), (1, 3)])
    assert not is_minimal_completion(cycle(4), [])


# -- clique characterisation ---------------------------------------------------


def test_cliques_of_augmented_p4_hold():
    ga, fa, m = setup(path(4))
    cl = inner_cliques(ga, m)
    assert cl
    for omega in cl:
        assert verify_clique_characterization(ga, fa, m, omega, 0).verdict == HOLDS


def test_c4_chord_clique_holds():
    ga, fa, m = setup(cycle(4), [(0, 2)])
    target = [c for c in inner_cliques(ga, m) if {2, 3, 4} <= c]
    assert target
    r = verify_clique_characterization(ga, fa, m, target[0], 1)
    assert r.verdict == HOLDS
    # the clique closes right after the first chord endpoint's neighbour ends
    a = clique_anatomy(Context(ga, fa, 1, m), 6)
    assert a.omega == {0, 2, 3, 4} and (a.v1, a.v2) == (3, 4)
    assert a.x1 == a.x2 == frozenset()


def test_both_chords_are_refused():
    ga, fa, m = setup(cycle(4), [(0, 2), (1, 3)])
    for omega in inner_cliques(ga, m):
        assert verify_clique_characterization(ga, fa, m, omega, 2).verdict == PRECONDITION_FAILED


def test_non_maximal_clique_is_refused():
    ga, fa, m = setup(path(3))
    assert verify_clique_characterization(ga, fa, m, {0}, 0).verdict == PRECONDITION_FAILED


def test_unaugmented_graph_is_refused():
    g = path(3)
    m = canonical_model(g)
    r = verify_clique_characterization(g, (), m, {0, 1}, 0)
    assert r.verdict == PRECONDITION_FAILED


@given(interval_graphs(max_n=6))
@settings(max_examples=60)
def test_untouched_graphs_hold_every_clique(g):
    ga, fa, m = setup(g)
    for model in (m, m.reversed()):
        for omega in inner_cliques(ga, model):
            assert verify_clique_characterization(ga, fa, model, omega, 0).holds


# -- sections ------------------------------------------------------------------


def test_sections_of_augmented_k1_and_p3():
    for g in (Graph.empty(1), path(3)):
        ga, fa, m = setup(g)
        assert verify_section_reconstruction(ga, fa, m).verdict == HOLDS


def test_sections_demand_canonical_model():
    ga, fa, m = setup(path(3))
    assert verify_section_reconstruction(ga, fa, m.reversed()).verdict == PRECONDITION_FAILED


def test_sections_demand_minimal_completion():
    ga, fa, m = setup(cycle(4), [(0, 2), (1, 3)])
    assert verify_section_reconstruction(ga, fa, m).verdict == PRECONDITION_FAILED


# -- fill-in structure ---------------------------------------------------------


def test_fill_in_on_augmented_p4_root():
    ga, fa, m = setup(path(4))
    assert verify_fill_in_structure(ga, fa, m, ga.special.root, 0).verdict == HOLDS


def test_fill_in_on_c4_with_chord():
    ga, fa, m = setup(cycle(4), [(0, 2)])
    assert verify_fill_in_structure(ga, fa, m, 2, 1).verdict == HOLDS
    assert all(verify_fill_in_structure(ga, fa, m, v, 1).verdict != VIOLATED for v in range(ga.n))


def test_fill_in_refuses_over_budget_and_non_minimal():
    ga, fa, m = setup(cycle(4), [(0, 2)])
    assert verify_fill_in_structure(ga, fa, m, 2, 0).verdict == PRECONDITION_FAILED
    ga, fa, m = setup(cycle(4), [(0, 2), (1, 3)])
    assert verify_fill_in_structure(ga, fa, m, 2, 2).verdict == PRECONDITION_FAILED


# -- small separation ----------------------------------------------------------


def test_empty_kset_counts_nothing():
    ga, fa, m = setup(cycle(4), [(0, 2)])
    r = verify_small_separation(ga, 1, fa, m, 1, 2 * m.n - 1, set())
    assert r.verdict == HOLDS and r.details["count"] == 0


def test_straddling_kset_is_refused():
    ga, fa, m = setup(path(4))
    # a vertex of both end sections: the root
    r = verify_small_separation(ga, 0, fa, m, 2, 2 * m.n - 2, {ga.special.root})
    assert r.verdict == PRECONDITION_FAILED


@given(interval_graphs(max_n=6))
@settings(max_examples=40)
def test_untouched_separation_count_within_kset(g):
    ga, fa, m = setup(g)
    for pl, pr, ks in admissible_triples(m, 2):
        r = verify_small_separation(ga, 0, fa, m, pl, pr, ks)
        assert r.holds and r.details["count"] <= len(ks)


# -- bounds ---------------------------------------------------------------------


def test_bound_formulas():
    assert class_bound(0, 0) == 1 and class_bound(2, 3) == 28
    assert low_deficiency_bound(1, 1) == 12 + 4 + 18 + 4


def test_class_bound_with_empty_and_full_set():
    g = cycle(4)
    r = verify_class_bound(g, [(0, 2)], [frozenset(), frozenset(range(4))])
    assert r.verdict == HOLDS


def test_tight_class_bound_is_caught():
    g = path(5)
    r = verify_class_bound(g, (), [frozenset({2})], bound=lambda a, f: 1)
    assert r.verdict == VIOLATED


@given(graphs(max_n=6))
@settings(max_examples=40)
def test_bounds_hold_for_canonical_solutions(g):
    from intcomp.modular import find_rule_application
    from intcomp.solvers import solve_oracle
    for k in range(3):
        res = solve_oracle(g, k)
        if res.solved:
            idle = find_rule_application(g, k) is None
            assert all(r.verdict != VIOLATED for r in verify_bounds(g, k, res.canonical, idle))


# -- canonical laws and modules ----------------------------------------------


@given(interval_graphs(max_n=8))
def test_canonical_laws_hold(g):
    m = canonical_model(g)
    assert all(r.holds for r in verify_canonical_laws(g, m))


def test_endpoint_law_catches_a_bad_model():
    # two twins closed in the wrong relative order
    m = IntervalModel.parse("0+ 1+ 0- 1-")
    assert check_endpoint_order(m)
    assert check_component_order(Graph.empty(2), IntervalModel.parse("1+ 1- 0+ 0-"))


def test_module_stays_on_c4():
    r = verify_module_stays(cycle(4), [((0, 2),), ((1, 3),)])
    assert r.verdict == HOLDS


def test_reports_are_json_serialisable():
    ga, fa, m = setup(cycle(4), [(0, 2)])
    reps = [verify_section_reconstruction(ga, fa, m),
            verify_fill_in_structure(ga, fa, m, 2, 1)]
    json.dumps([r.to_dict() for r in reps])
