"""The eight reference vertices around a maximal clique, and the clique
characterisation they give for minimal completions."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ..graph import Graph
from ..model import IntervalModel, maximal_clique_positions
from .context import Context, is_minimal_completion
from .report import LemmaReport, holds, precondition_failed, violated

LEMMA = "pmc-char"


@dataclass(frozen=True)
class CliqueAnatomy:
    omega: frozenset[int]
    p: int
    v1: int  # its end sits right after the clique
    v2: int  # its begin closes the clique
    c1: int
    c2: int
    f1: int
    f2: int
    g1: int
    g2: int
    x1: frozenset[int]
    x2: frozenset[int]
    f1_nbrs: frozenset[int]  # partners of c1 in the completion
    f2_nbrs: frozenset[int]


def _pick(cands, key):
    cands = list(cands)
    return max(cands, key=key) if cands else None


def clique_anatomy(ctx: Context, p: int) -> CliqueAnatomy | None:
    """Reference vertices for the maximal clique at position ``p``; ``None`` if some pool is empty."""
    m, g = ctx.m, ctx.g
    omega = m.section(p)
    v2 = m.at(p).vertex
    v1 = m.at(p + 1).vertex
    vs = range(g.n)
    c1 = _pick((c for c in vs if ctx.cheap(c) and m.end(c) <= p + 1), m.end)
    c2 = _pick((c for c in vs if ctx.cheap(c) and m.begin(c) >= p), lambda c: -m.begin(c))
    f1 = _pick((c for c in vs if ctx.untouched(c) and m.end(c) <= p + 1), m.end)
    f2 = _pick((c for c in vs if ctx.untouched(c) and m.begin(c) >= p), lambda c: -m.begin(c))
    if None in (c1, c2, f1, f2):
        return None
    pool1 = g.closed_neighbors(f1) - (omega - {v1})
    pool2 = g.closed_neighbors(f2) - (omega - {v2})
    g1 = _pick((u for u in pool1 if ctx.untouched(u)), lambda u: -m.begin(u))
    g2 = _pick((u for u in pool2 if ctx.untouched(u)), m.end)
    if g1 is None or g2 is None:
        return None
    x1 = frozenset(v for v in vs if m.end(c1) < m.end(v) <= p + 1)
    x2 = frozenset(v for v in vs if p <= m.begin(v) < m.begin(c2))
    return CliqueAnatomy(omega, p, v1, v2, c1, c2, f1, f2, g1, g2, x1, x2,
                         ctx.incident(c1), ctx.incident(c2))


def characterised_clique(g: Graph, a: CliqueAnatomy) -> frozenset[int]:
    left = g.closed_neighborhood({a.v1, a.c1, a.f1} | a.x1) | a.f1_nbrs
    right = g.closed_neighborhood({a.v2, a.c2, a.f2} | a.x2) | a.f2_nbrs
    return left & right


def _within_sqrt(count: int, k: int, coeff: int = 1) -> bool:
    """``count <= coeff * sqrt(k)`` in exact arithmetic."""
    return count <= 0 or count * count <= coeff * coeff * k


def check_anatomy(ctx: Context, a: CliqueAnatomy) -> list[str]:
    m, g, k = ctx.m, ctx.g, ctx.k
    bad = []
    if not m.end(a.g1) <= m.end(a.f1) <= m.end(a.c1) <= m.end(a.v1) == a.p + 1:
        bad.append("left end positions out of order")
    if not m.begin(a.g2) >= m.begin(a.f2) >= m.begin(a.c2) >= m.begin(a.v2) == a.p:
        bad.append("right begin positions out of order")
    if a.v1 not in g.closed_neighbors(a.v2):
        bad.append("v1 and v2 are joined only by an added pair")
    if not _within_sqrt(len(a.f1_nbrs), k) or not _within_sqrt(len(a.f2_nbrs), k):
        bad.append("a cheap reference vertex has more than sqrt(k) added pairs")
    if any(ctx.cheap(v) for v in a.x1 | a.x2):
        bad.append("a vertex strictly between a cheap reference and the clique is cheap")
    if not _within_sqrt(len(a.x1) + len(a.x2) - 1, k, 2):
        bad.append("more than 2*sqrt(k)+1 expensive vertices beside the clique")
    if characterised_clique(g, a) != a.omega:
        bad.append("clique differs from its neighbourhood characterisation")
    return bad


def verify_clique_characterization(g: Graph, f, m: IntervalModel, omega, k: int,
                                   instance: str | None = None) -> LemmaReport:
    """Check the characterisation of a maximal clique of ``g+f`` (``g`` augmented)."""
    ctx = Context(g, tuple(sorted(f)), k, m)
    inst = instance or ctx.instance
    omega = frozenset(omega)
    if g.special is None:
        return precondition_failed(LEMMA, inst, "graph is not augmented")
    if not is_minimal_completion(g, ctx.f):
        return precondition_failed(LEMMA, inst, "completion is not minimal")
    r, rl, rr = g.special
    if omega in ({r, rl}, {r, rr}):
        return precondition_failed(LEMMA, inst, "clique is one of the two pendant cliques")
    spots = [p for p in maximal_clique_positions(m) if m.section(p) == omega]
    if not spots:
        return precondition_failed(LEMMA, inst, "not a maximal clique of the model", omega=omega)
    a = clique_anatomy(ctx, spots[0])
    if a is None:
        return violated(LEMMA, inst, problems=["a reference vertex pool is empty"], omega=omega)
    bad = check_anatomy(ctx, a)
    if bad:
        return violated(LEMMA, inst, problems=bad, anatomy=asdict(a),
                        characterised=characterised_clique(g, a), model=str(m))
    return holds(LEMMA, inst, omega=omega, p=a.p)
