"""Few components can hide inside the span of a small set between two sections."""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from ..graph import Graph, components
from ..model import IntervalModel
from .context import instance_id
from .report import LemmaReport, holds, precondition_failed, violated

LEMMA = "left-right"


def count_hidden_components(g: Graph, m: IntervalModel, pl: int, pr: int, kset: frozenset[int],
                            comps: list[frozenset[int]] | None = None) -> int:
    """Components of ``g`` minus both sections that see only ``kset`` plus the common
    part, lie strictly between ``pl`` and ``pr``, and straddle an event of ``kset``."""
    left, right = m.section(pl), m.section(pr - 1)
    allowed = kset | (left & right)
    if comps is None:
        comps = components(g, left | right)
    kpos = sorted(p for v in kset for p in (m.begin(v), m.end(v)))
    count = 0
    for comp in comps:
        start = min(m.begin(v) for v in comp)
        stop = max(m.end(v) for v in comp)
        if not pl < start < stop < pr:
            continue
        if not g.neighborhood(comp) <= allowed:
            continue
        if any(start < q < stop for q in kpos):
            count += 1
    return count


def within_bound(count: int, k: int, ksize: int, coeff: int = 3) -> bool:
    """``count <= coeff * sqrt(k) + ksize`` without floating point."""
    excess = count - ksize
    return excess <= 0 or excess * excess <= coeff * coeff * k


def verify_small_separation(g: Graph, k: int, f, m: IntervalModel, pl: int, pr: int, kset,
                            instance: str | None = None, coeff: int = 3) -> LemmaReport:
    kset = frozenset(kset)
    inst = instance or instance_id(g, f, k, f"pL={pl},pR={pr},K={sorted(kset)}")
    if not 0 <= pl < pr <= 2 * m.n:
        return precondition_failed(LEMMA, inst, "positions out of range")
    left, right = m.section(pl), m.section(pr - 1)
    if not (kset <= left - right or kset <= right - left):
        return precondition_failed(LEMMA, inst, "K straddles both sections")
    count = count_hidden_components(g, m, pl, pr, kset)
    if within_bound(count, k, len(kset), coeff):
        return holds(LEMMA, inst, count=count)
    return violated(LEMMA, inst, count=count, bound=f"{coeff}*sqrt({k})+{len(kset)}",
                    model=str(m), left=left, right=right)


def admissible_triples(m: IntervalModel, max_k: int = 2) -> Iterator[tuple[int, int, frozenset[int]]]:
    """Every ``(pL, pR, K)`` with ``|K| <= max_k`` and ``K`` on one side only."""
    size = 2 * m.n
    for pl in range(size):
        left = m.section(pl)
        for pr in range(pl + 1, size + 1):
            right = m.section(pr - 1)
            seen = set()
            for side in (left - right, right - left):
                for r in range(max_k + 1):
                    for ks in combinations(sorted(side), r):
                        ks = frozenset(ks)
                        if ks not in seen:
                            seen.add(ks)
                            yield pl, pr, ks


def sweep_small_separation(g: Graph, k: int, f, m: IntervalModel, max_k: int = 2,
                           coeff: int = 3) -> tuple[int, LemmaReport | None]:
    """Check all admissible triples; returns the number checked and the first violation."""
    checked = 0
    cache: dict[tuple[int, int], list[frozenset[int]]] = {}
    for pl, pr, ks in admissible_triples(m, max_k):
        key = (pl, pr)
        if key not in cache:
            cache[key] = components(g, m.section(pl) | m.section(pr - 1))
        count = count_hidden_components(g, m, pl, pr, ks, cache[key])
        checked += 1
        if not within_bound(count, k, len(ks), coeff):
            return checked, violated(LEMMA, instance_id(g, f, k, f"pL={pl},pR={pr},K={sorted(ks)}"),
                                     count=count, bound=f"{coeff}*sqrt({k})+{len(ks)}", model=str(m))
    return checked, None
