"""Ordering laws of canonical models, and persistence of modules under minimum completions."""

from __future__ import annotations

from ..graph import Graph, components, mask_of, set_of
from ..model import BEGIN, IntervalModel
from ..modular import all_modules, check_module_stays
from .context import instance_id
from .report import LemmaReport, holds, violated

ENDPOINTS = "canonical-endpoints"
COMPONENTS = "canonical-components"
MODULE_STAYS = "module-stays"


def check_endpoint_order(m: IntervalModel) -> list[tuple[int, int]]:
    """Adjacent position pairs breaking the rule: begin runs increase by id, end runs decrease."""
    bad = []
    ev = m.events
    for p in range(len(ev) - 1):
        a, b = ev[p], ev[p + 1]
        if a.kind != b.kind:
            continue
        if (a.kind == BEGIN) != (a.vertex < b.vertex):
            bad.append((p + 1, p + 2))
    return bad


def cliques(g: Graph) -> list[frozenset[int]]:
    """All cliques including the empty one; small graphs only."""
    out = [0]
    for v in range(g.n):
        out += [c | 1 << v for c in out if c & ~g.adj[v] == 0]
    return [set_of(c) for c in out]


def check_component_order(g: Graph, m: IntervalModel) -> list[dict]:
    """For each clique ``X``, components of ``G - X`` whose vertices see exactly ``X``
    outside the component must appear in the order of their smallest vertices."""
    bad = []
    for x in cliques(g):
        xm = mask_of(x)
        group = []
        for comp in components(g, x):
            cm = mask_of(comp)
            if all(g.adj[v] & ~cm == xm for v in comp):
                group.append(comp)
        group.sort(key=lambda c: min(m.begin(v) for v in c))
        mins = [min(c) for c in group]
        if mins != sorted(mins):
            bad.append({"clique": x, "components_in_model_order": group})
    return bad


def verify_canonical_laws(g: Graph, m: IntervalModel, instance: str | None = None) -> list[LemmaReport]:
    inst = instance or instance_id(g)
    out = []
    bad = check_endpoint_order(m)
    out.append(violated(ENDPOINTS, inst, positions=bad, model=str(m)) if bad else holds(ENDPOINTS, inst))
    bad = check_component_order(g, m)
    out.append(violated(COMPONENTS, inst, problems=bad, model=str(m)) if bad else holds(COMPONENTS, inst))
    return out


def connected_modules(g: Graph) -> list[frozenset[int]]:
    return [mod for mod in all_modules(g) if len(components(g.induced(mod)[0])) == 1]


def verify_module_stays(g: Graph, minimum_completions, instance: str | None = None) -> LemmaReport:
    """Every connected module of ``g`` is a module of ``g + F`` for each given minimum ``F``."""
    inst = instance or instance_id(g)
    mods = connected_modules(g)
    for f in minimum_completions:
        for mod in mods:
            if not check_module_stays(g, f, mod):
                return violated(MODULE_STAYS, inst, completion=[list(p) for p in f], module=mod)
    return holds(MODULE_STAYS, inst, modules=len(mods))
