"""Every section of a canonical model is recoverable from its two flanking
maximal cliques and an offset."""

from __future__ import annotations

from bisect import bisect_left, bisect_right

from ..graph import Graph
from ..model import BEGIN, END, IntervalModel, maximal_clique_positions
from ..recognize import canonical_model
from .context import instance_id, is_minimal_completion
from .report import LemmaReport, holds, precondition_failed, violated

LEMMA = "sections"


def reconstruct_section(left: frozenset[int], right: frozenset[int], offset: int) -> frozenset[int]:
    """Section ``offset`` steps after clique ``left`` on the way to clique ``right``.

    Ends of ``left - right`` come first by decreasing id, then begins of
    ``right - left`` by increasing id.
    """
    leaving = sorted(left - right, reverse=True)
    joining = sorted(right - left)
    if not 0 <= offset <= len(leaving) + len(joining):
        raise ValueError("offset beyond the next maximal clique")
    gone = leaving[:offset]
    come = joining[:max(0, offset - len(leaving))]
    return (left - set(gone)) | set(come)


def verify_section_reconstruction(g: Graph, f, m: IntervalModel, instance: str | None = None,
                                  check_canonical: bool = True) -> LemmaReport:
    inst = instance or instance_id(g, f)
    if g.special is None:
        return precondition_failed(LEMMA, inst, "graph is not augmented")
    if not is_minimal_completion(g, f):
        return precondition_failed(LEMMA, inst, "completion is not minimal")
    if check_canonical and canonical_model(g.plus(f)) != m:
        return precondition_failed(LEMMA, inst, "model is not the canonical model")
    r, rl, rr = g.special
    size = 2 * m.n
    sections = [m.section(p) for p in range(size + 1)]
    obvious = [frozenset(), frozenset({r}), frozenset({r, rl}), frozenset({r, rr})]
    problems = []
    for s in obvious:
        if s not in sections:
            problems.append({"missing_obvious_section": s})
    cliques = maximal_clique_positions(m)
    for p in range(size + 1):
        if sections[p] in obvious:
            continue
        i = bisect_right(cliques, p) - 1
        j = bisect_left(cliques, p)
        if i < 0 or j >= len(cliques):
            problems.append({"position": p, "issue": "no flanking maximal clique"})
            continue
        p1, p2 = cliques[i], cliques[j]
        left, right = sections[p1], sections[p2]
        leaving = sorted(left - right, reverse=True)
        joining = sorted(right - left)
        layout = [(v, END) for v in leaving] + [(v, BEGIN) for v in joining]
        actual = [tuple(m.at(q)) for q in range(p1 + 1, p2 + 1)]
        if actual != layout:
            problems.append({"position": p, "p1": p1, "p2": p2, "issue": "event layout",
                             "expected": [list(e) for e in layout], "actual": [list(e) for e in actual]})
            continue
        if reconstruct_section(left, right, p - p1) != sections[p]:
            problems.append({"position": p, "p1": p1, "issue": "reconstruction differs"})
    if problems:
        return violated(LEMMA, inst, problems=problems, model=str(m))
    return holds(LEMMA, inst, positions=size + 1)
