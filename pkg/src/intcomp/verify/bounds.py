"""Counting bounds on neighbourhood classes and low-deficiency components."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Callable, Iterator

from ..graph import Graph, count_low_deficiency_components, neighborhood_classes
from .context import instance_id
from .report import LemmaReport, holds, violated

CLASSES = "nei-classes"
LOW_DEFICIENCY = "low-deficiency"


def class_bound(a_size: int, f_size: int) -> int:
    return (2 * a_size + 1) ** 2 + f_size


def low_deficiency_bound(k: int, r: int) -> int:
    return 12 * k * r + 4 * k + 18 * r + 4


def sample_sets(n: int, seed: int = 0, exhaustive_size: int = 3, exhaustive_n: int = 7,
                samples: int = 1000) -> Iterator[frozenset[int]]:
    """All sets up to ``exhaustive_size`` on small graphs, else seeded uniform subsets."""
    if n <= exhaustive_n:
        for size in range(min(exhaustive_size, n) + 1):
            for a in combinations(range(n), size):
                yield frozenset(a)
        return
    rng = random.Random(seed)
    for _ in range(samples):
        yield frozenset(v for v in range(n) if rng.random() < 0.5)


def verify_class_bound(g: Graph, f, sets, bound: Callable[[int, int], int] = class_bound) -> LemmaReport:
    """Neighbourhood classes w.r.t. each set stay within the bound for completion ``f``."""
    inst = instance_id(g, f)
    checked = 0
    for a in sets:
        count = len(neighborhood_classes(g, a))
        checked += 1
        if count > bound(len(a), len(f)):
            return violated(CLASSES, inst, a=a, classes=count, bound=bound(len(a), len(f)))
    return holds(CLASSES, inst, sets=checked)


def verify_low_deficiency_bound(g: Graph, k: int, sets,
                                bound: Callable[[int, int], int] = low_deficiency_bound) -> LemmaReport:
    """Caller certifies ``(g, k)`` is a yes-instance on which the reduction rule is idle."""
    inst = instance_id(g, k=k)
    checked = 0
    for a in sets:
        for r in range(1, max(k, 1) + 1):
            count = count_low_deficiency_components(g, a, r)
            checked += 1
            if count > bound(k, r):
                return violated(LOW_DEFICIENCY, inst, a=a, r=r, components=count, bound=bound(k, r))
    return holds(LOW_DEFICIENCY, inst, pairs=checked)


def verify_bounds(g: Graph, k: int, f, rule_idle: bool, seed: int = 0,
                  class_bound_fn: Callable[[int, int], int] = class_bound,
                  deficiency_bound_fn: Callable[[int, int], int] = low_deficiency_bound) -> list[LemmaReport]:
    """Both bounds over the sampled sets; ``f`` is a completion of size at most ``k``.

    The component bound is only claimed when the reduction rule does not
    apply at budget ``k``, so it is skipped otherwise.
    """
    sets = list(sample_sets(g.n, seed))
    out = [verify_class_bound(g, f, sets, class_bound_fn)]
    if rule_idle:
        out.append(verify_low_deficiency_bound(g, k, sets, deficiency_bound_fn))
    return out
