"""Classification of the components around a fixed vertex by the untouched
vertices enclosing it."""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import Graph, components
from ..model import IntervalModel
from .context import Context, is_minimal_completion
from .report import LemmaReport, holds, precondition_failed, violated

LEMMA = "fi-structure"


@dataclass(frozen=True)
class FillInContext:
    v: int
    f_left: int  # enclosing untouched vertex with the latest begin
    f_right: int  # enclosing untouched vertex with the earliest end
    pv_left: int
    pv_right: int
    pf_left: int
    pf_right: int
    sec_f_left: frozenset[int]
    sec_v_left: frozenset[int]
    sec_v_right: frozenset[int]
    sec_f_right: frozenset[int]


def fill_in_context(ctx: Context, v: int) -> FillInContext | None:
    m = ctx.m
    pl, pr = m.begin(v), m.end(v)
    enclosing = [f for f in range(ctx.g.n) if ctx.untouched(f) and m.begin(f) <= pl and pr <= m.end(f)]
    if not enclosing:
        return None
    fl = max(enclosing, key=m.begin)
    fr = min(enclosing, key=m.end)
    pfl, pfr = m.begin(fl), m.end(fr)
    return FillInContext(v, fl, fr, pl, pr, pfl, pfr,
                         m.section(pfl), m.section(pl), m.section(pr - 1), m.section(pfr - 1))

def _expected_inclusions(c: FillInContext) -> list[str]:
    lf, lv, rv, rf = c.sec_f_left, c.sec_v_left, c.sec_v_right, c.sec_f_right
    bad = []
    if c.v not in lv & rv:
        bad.append("v missing from its own end sections")
    if not {c.f_left, c.f_right} <= lf & rf:
        bad.append("enclosing vertices missing from the outer sections")
    if not (lf & rf) <= (lf & rv) <= (lv & rv):
        bad.append("left chain of section intersections broken")
    if not (lf & rf) <= (lv & rf) <= (lv & rv):
        bad.append("right chain of section intersections broken")
    return bad


def classify_component(ctx: Context, c: FillInContext, comp: frozenset[int]) -> tuple[str, list[str]]:
    """Category (``1``, ``3``, ``4a``, ``4b``, ``4c``) and the clauses that fail for it."""
    g, m, k = ctx.g, ctx.m, ctx.k
    fset = set(ctx.f)
    v = c.v
    common = g.neighbors(c.f_left) & g.neighbors(c.f_right)
    start, stop = ctx.first(comp), ctx.last(comp)
    linked_to_v = lambda w: g.has_edge(v, w) or (min(v, w), max(v, w)) in fset  # noqa: E731
    added_to_v = lambda w: (min(v, w), max(v, w)) in fset  # noqa: E731
    bad = []
    if not comp & common:
        if not (stop < c.pf_left or start > c.pf_right):
            bad.append("component away from both enclosing vertices lies between them")
        if any(linked_to_v(w) for w in comp):
            bad.append("component away from both enclosing vertices is linked to v")
        return "1", bad
    if not c.pf_left < start < stop < c.pf_right:
        bad.append("component seen by both enclosing vertices is not strictly between them")
    if not comp <= common:
        bad.append("component only partly seen by both enclosing vertices")
        return "none", bad
    if comp & g.neighbors(v):
        if not c.pv_left < start < stop < c.pv_right:
            bad.append("component touching v is not strictly inside v")
        if not all(linked_to_v(w) for w in comp):
            bad.append("component touching v has a vertex not linked to v")
        return "3", bad
    nbhd = g.neighborhood(comp)
    if c.pv_left < start < stop < c.pv_right:
        case = "4a"
        if not all(added_to_v(w) for w in comp):
            bad.append("inner component has a vertex without an added pair to v")
        if not nbhd <= c.sec_v_left | c.sec_v_right:
            bad.append("inner component sees outside v's end sections")
        if len(comp) > k:
            bad.append("component larger than k placed inside v")
    elif c.pf_left < start < stop < c.pv_left:
        case = "4b"
        if any(added_to_v(w) for w in comp):
            bad.append("left component has an added pair to v")
        if not nbhd <= c.sec_f_left | c.sec_v_left:
            bad.append("left component sees outside the left sections")
    elif c.pv_right < start < stop < c.pf_right:
        case = "4c"
        if any(added_to_v(w) for w in comp):
            bad.append("right component has an added pair to v")
        if not nbhd <= c.sec_f_right | c.sec_v_right:
            bad.append("right component sees outside the right sections")
    else:
        case = "4?"
        bad.append("undecided component fits none of the three placements")
    return case, bad


def verify_fill_in_structure(g: Graph, f, m: IntervalModel, v: int, k: int,
                             instance: str | None = None) -> LemmaReport:
    ctx = Context(g, tuple(sorted(f)), k, m)
    inst = (instance or ctx.instance) + f"|v={v}"
    if len(ctx.f) > k:
        return precondition_failed(LEMMA, inst, "completion larger than the budget")
    if not is_minimal_completion(g, ctx.f):
        return precondition_failed(LEMMA, inst, "completion is not minimal")
    c = fill_in_context(ctx, v)
    if c is None:
        return precondition_failed(LEMMA, inst, "no untouched vertex encloses v")
    if not (m.begin(c.f_right) <= c.pf_left <= c.pv_left < c.pv_right <= c.pf_right <= m.end(c.f_left)):
        return precondition_failed(LEMMA, inst, "enclosing positions out of order")
    incons = _expected_inclusions(c)
    if incons:
        return precondition_failed(LEMMA, inst, "inconsistent sections", problems=incons)
    removed = c.sec_f_left | c.sec_v_left | c.sec_v_right | c.sec_f_right
    categories = {}
    problems = []
    for comp in components(g, removed):
        cat, bad = classify_component(ctx, c, comp)
        categories[min(comp)] = cat
        if bad:
            problems.append({"component": comp, "category": cat, "failed": bad})
    if problems:
        return violated(LEMMA, inst, problems=problems, model=str(m))
    return holds(LEMMA, inst, categories=categories)
