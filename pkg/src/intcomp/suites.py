"""Batch runs that push corpus instances through the solvers and checkers.

Every suite turns one graph into a list of :class:`LemmaReport`; the runner
fans graphs out (optionally over worker processes, keeping input order) and
aggregates verdicts into a :class:`Summary`.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable

from .config import DEFAULT, Config
from .dp import DPError, dp_reconstruct
from .graph import Graph, augment
from .model import maximal_clique_positions
from .modular import find_rule_application
from .recognize import canonical_model, is_interval_graph
from .solvers import is_completion, solve_branching, solve_oracle
from .verify import (
    LemmaReport,
    Summary,
    verify_bounds,
    verify_canonical_laws,
    verify_clique_characterization,
    verify_fill_in_structure,
    verify_module_stays,
    verify_section_reconstruction,
)
from .verify.context import instance_id
from .verify.report import VIOLATED, holds, precondition_failed, violated
from .verify.separation import LEMMA as SEPARATION, sweep_small_separation

SOLVER_EQUIVALENCE = "solver-equivalence"
REDUCTION_SAFETY = "reduction-safety"
DP_CHECK = "dp-check"
DETERMINISM = "canonical-determinism"


def shifted(f) -> tuple[tuple[int, int], ...]:
    """A completion of ``g`` as a completion of ``augment(g)``."""
    return tuple((u + 2, v + 2) for u, v in f)


# -- per-graph checks ----------------------------------------------------------------


def check_solvers(g: Graph, kmax: int, config: Config = DEFAULT) -> list[LemmaReport]:
    inst = instance_id(g, k=kmax)
    a = solve_oracle(g, kmax, cap=config.oracle_cap)
    b = solve_branching(g, kmax)
    if a.status != b.status or a.opt != b.opt:
        return [violated(SOLVER_EQUIVALENCE, inst, oracle=a.to_dict(), branching=b.to_dict())]
    if b.solved and not (len(b.solution) == b.opt and is_completion(g, b.solution)):
        return [violated(SOLVER_EQUIVALENCE, inst, branching_solution=b.solution)]
    return [holds(SOLVER_EQUIVALENCE, inst, status=a.status, opt=a.opt)]


def check_reduction(g: Graph, kmax: int, config: Config = DEFAULT) -> list[LemmaReport]:
    """For every budget where the rule acts, the optimum must not move."""
    out = []
    for k in range(kmax + 1):
        app = find_rule_application(g, k)
        if app is None:
            continue
        inst = instance_id(g, k=k)
        before = solve_oracle(g, k, cap=config.oracle_cap)
        if app.no_instance:
            if before.solved:
                out.append(violated(REDUCTION_SAFETY, inst, reason="rule rejected a solvable instance",
                                    opt=before.opt, application=app.to_dict()))
            else:
                out.append(holds(REDUCTION_SAFETY, inst, rejected=True))
            continue
        if not before.solved:
            out.append(precondition_failed(REDUCTION_SAFETY, inst, "budget below the optimum"))
            continue
        after = solve_oracle(g.without(app.removed)[0], k, cap=config.oracle_cap)
        if after.opt != before.opt:
            out.append(violated(REDUCTION_SAFETY, inst, before=before.opt, after=after.opt,
                                application=app.to_dict()))
        else:
            out.append(holds(REDUCTION_SAFETY, inst, opt=before.opt, removed=app.removed))
    return out


def check_dp(g: Graph, kmax: int, config: Config = DEFAULT) -> list[LemmaReport]:
    res = solve_oracle(g, kmax, cap=config.oracle_cap)
    if not res.solved:
        return [precondition_failed(DP_CHECK, instance_id(g, k=kmax), "over budget")]
    ga = augment(g)
    f = shifted(res.canonical)
    m = canonical_model(ga.plus(f))
    out = []
    for k in range(res.opt, kmax + 1):
        out.append(dp_report(ga, f, m, k, config.event_cap))
    return out


def dp_report(ga: Graph, f, m, k: int, event_cap: int) -> LemmaReport:
    inst = instance_id(ga, f, k)
    try:
        r = dp_reconstruct(ga, f, m, k, event_cap)
    except DPError as exc:
        return violated(DP_CHECK, inst, error=str(exc))
    stats = {"states": r.states, "base_cells": r.base_cells, "glued_cells": r.glued_cells}
    if r.model != m or not r.matches:
        return violated(DP_CHECK, inst, expected=str(m), rebuilt=str(r.model),
                        mismatched=[s.to_dict() for s in r.mismatched_cells], **stats)
    return holds(DP_CHECK, inst, model=str(m), **stats)


def _minimal_tuples(g: Graph, kmax: int, config: Config):
    """``(augmented g, shifted minimal completion, its model)`` for every inclusion-minimal completion within ``kmax``."""
    res = solve_oracle(g, kmax, all_minimal=True, cap=config.oracle_cap)
    if not res.solved:
        return
    ga = augment(g)
    for f in res.all_minimal:
        fa = shifted(f)
        yield ga, fa, canonical_model(ga.plus(fa))


def check_cliques(g: Graph, kmax: int, config: Config = DEFAULT) -> list[LemmaReport]:
    out = []
    for ga, fa, m in _minimal_tuples(g, kmax, config):
        pendant = {ga.special.left, ga.special.right}
        for k in range(len(fa), kmax + 1):
            for model in (m, m.reversed()):
                for p in maximal_clique_positions(model):
                    omega = model.section(p)
                    if omega & pendant:
                        continue
                    out.append(verify_clique_characterization(ga, fa, model, omega, k))
    return out


def check_sections(g: Graph, kmax: int, config: Config = DEFAULT) -> list[LemmaReport]:
    return [verify_section_reconstruction(ga, fa, m) for ga, fa, m in _minimal_tuples(g, kmax, config)]


def check_fill_in(g: Graph, kmax: int, config: Config = DEFAULT) -> list[LemmaReport]:
    out = []
    for ga, fa, m in _minimal_tuples(g, kmax, config):
        for k in range(len(fa), kmax + 1):
            for model in (m, m.reversed()):
                out.extend(verify_fill_in_structure(ga, fa, model, v, k) for v in range(ga.n))
    return out


def check_separation(g: Graph, kmax: int, config: Config = DEFAULT, coeff: int = 3,
                     max_k: int = 2) -> list[LemmaReport]:
    res = solve_oracle(g, kmax, cap=config.oracle_cap)
    if not res.solved:
        return []
    ga = augment(g)
    fa = shifted(res.canonical)
    m = canonical_model(ga.plus(fa))
    out = []
    for k in range(res.opt, kmax + 1):
        checked, bad = sweep_small_separation(ga, k, fa, m, max_k, coeff)
        out.append(bad or holds(SEPARATION, instance_id(ga, fa, k), triples=checked))
    return out


def check_bounds(g: Graph, kmax: int, config: Config = DEFAULT,
                 class_bound_fn: Callable | None = None,
                 deficiency_bound_fn: Callable | None = None) -> list[LemmaReport]:
    extra = {}
    if class_bound_fn is not None:
        extra["class_bound_fn"] = class_bound_fn
    if deficiency_bound_fn is not None:
        extra["deficiency_bound_fn"] = deficiency_bound_fn
    out = []
    for k in range(kmax + 1):
        res = solve_oracle(g, k, cap=config.oracle_cap)
        if not res.solved:
            continue
        idle = find_rule_application(g, k) is None
        out.extend(verify_bounds(g, k, res.canonical, idle, config.seed, **extra))
    return out


def check_modules(g: Graph, kmax: int, config: Config = DEFAULT) -> list[LemmaReport]:
    res = solve_oracle(g, kmax, all_minimal=True, cap=config.oracle_cap)
    if not res.solved:
        return []
    return [verify_module_stays(g, res.minimum)]


def check_canonical(g: Graph, kmax: int, config: Config = DEFAULT) -> list[LemmaReport]:
    if not is_interval_graph(g):
        return []
    m = canonical_model(g)
    again = canonical_model(g)
    out = verify_canonical_laws(g, m)
    inst = instance_id(g)
    if str(m) != str(again):
        out.append(violated(DETERMINISM, inst, first=str(m), second=str(again)))
    else:
        out.append(holds(DETERMINISM, inst))
    return out


SUITES: dict[str, Callable[..., list[LemmaReport]]] = {
    SOLVER_EQUIVALENCE: check_solvers,
    REDUCTION_SAFETY: check_reduction,
    DP_CHECK: check_dp,
    "pmc-char": check_cliques,
    "sections": check_sections,
    "fi-structure": check_fill_in,
    "left-right": check_separation,
    "bounds": check_bounds,
    "module-stays": check_modules,
    "canonical": check_canonical,
}

LEMMA_SUITES = ("pmc-char", "sections", "fi-structure", "left-right", "bounds", "module-stays", "canonical")


# -- runner ----------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    summary: Summary
    reports: list[LemmaReport] = field(repr=False)
    per_lemma: dict[str, Summary] = field(default_factory=dict)
    instances: int = 0
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.summary.violated == 0

    @property
    def violations(self) -> list[LemmaReport]:
        return [r for r in self.reports if r.verdict == VIOLATED]

    def to_dict(self, all_reports: bool = False) -> dict:
        shown = self.reports if all_reports else [r for r in self.reports if not r.holds]
        return {
            "suite": self.name,
            "instances": self.instances,
            "seconds": round(self.seconds, 3),
            "summary": self.summary.to_dict(),
            "per_lemma": {k: v.to_dict() for k, v in sorted(self.per_lemma.items())},
            "reports": [r.to_dict() for r in shown],
        }


def run_suite(name: str, graphs: Iterable[Graph], kmax: int, config: Config = DEFAULT,
              **options) -> SuiteResult:
    """Run suite ``name`` on each graph with budgets up to ``kmax``."""
    try:
        check = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    task = partial(check, kmax=kmax, config=config, **options)
    start = time.perf_counter()
    graphs = list(graphs)
    if config.jobs > 1 and len(graphs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            batches = list(pool.map(task, graphs, chunksize=max(1, len(graphs) // (4 * config.jobs))))
    else:
        batches = [task(g) for g in graphs]
    reports = [r for batch in batches for r in batch]
    summary = Summary()
    summary.add(reports)
    per_lemma: dict[str, Summary] = {}
    for r in reports:
        per_lemma.setdefault(r.lemma, Summary()).add([r])
    return SuiteResult(name, summary, reports, per_lemma, len(graphs), time.perf_counter() - start)

