"""Command-line front end.

Exit codes: 0 success, 1 infeasible result (over budget, not interval,
refuted by reduction), 2 usage or input error, 3 a checker reported a
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .config import Config
from .corpus import KINDS, InstanceSpec, exhaustive_upto, generate
from .graph import Graph, augment
from .graphio import FormatError, format_edge_list, format_graph6, read_graph
from .modular import reduce_exhaustively
from .recognize import NotInterval, canonical_model, recognize
from .solvers import solve_branching, solve_oracle
from .suites import LEMMA_SUITES, SUITES, dp_report, run_suite, shifted

SCHEMA_VERSION = 1
OK, INFEASIBLE, USAGE, VIOLATION = 0, 1, 2, 3

_pairs = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}}
_summary = {"type": "object", "properties": {k: {"type": "integer"} for k in ("checked", "holds", "violated", "skipped")}}
_report = {
    "type": "object",
    "required": ["lemma", "instance", "verdict"],
    "properties": {
        "lemma": {"type": "string"},
        "instance": {"type": "string"},
        "verdict": {"enum": ["holds", "violated", "precondition_failed"]},
        "details": {"type": "object"},
    },
}
SCHEMA: dict[str, Any] = {
    "schema_version": SCHEMA_VERSION,
    "commands": {
        "solve": {"type": "object", "required": ["status", "k", "opt", "canonical"],
                  "properties": {"status": {"enum": ["solved", "over_budget"]}, "k": {"type": "integer"},
                                 "opt": {"type": ["integer", "null"]}, "canonical": {"oneOf": [_pairs, {"type": "null"}]},
                                 "canonical_model": {"type": "string"}, "all_minimal": {"type": "array", "items": _pairs}}},
        "reduce": {"type": "object", "required": ["no_instance", "kept", "trace"],
                   "properties": {"no_instance": {"type": "boolean"}, "kept": {"type": "array"},
                                  "trace": {"type": "array"}, "edge_list": {"type": "string"}}},
        "canon": {"type": "object", "required": ["model"],
                  "properties": {"model": {"type": "string"}, "completion": _pairs}},
        "recognize": {"type": "object", "required": ["interval"],
                      "properties": {"interval": {"type": "boolean"}, "model": {"type": "string"},
                                     "witness": {"type": "array", "items": {"type": "integer"}}}},
        "verify": {"type": "object", "required": ["summary", "reports"],
                   "properties": {"summary": _summary, "reports": {"type": "array", "items": _report}}},
        "dp-check": {"type": "object", "required": ["status"],
                     "properties": {"status": {"enum": ["match", "mismatch", "over_budget"]}, "report": _report}},
        "gen": {"type": "object", "required": ["written"], "properties": {"written": {"type": "array"}}},
        "suite": {"type": "object", "required": ["suite", "summary", "per_lemma", "reports"],
                  "properties": {"suite": {"type": "string"}, "instances": {"type": "integer"}, "summary": _summary,
                                 "per_lemma": {"type": "object"}, "reports": {"type": "array", "items": _report}}},
    },
}


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _budget(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="seed for every random choice (default 0)")
    common.add_argument("--jobs", type=_positive, help="worker processes for suites")
    common.add_argument("--vertex-cap", type=_positive)
    common.add_argument("--oracle-cap", type=_positive)
    common.add_argument("--event-cap", type=_positive, help="DP states with at most this many events are brute-forced")
    common.add_argument("--output", choices=["json", "text"])
    common.add_argument("--json", dest="as_json", nargs="?", const=True, default=None, metavar="PATH",
                        help="JSON output; suite also accepts a report path")

    p = argparse.ArgumentParser(prog="intcomp", description="Exact interval completion and structural checkers.")
    p.add_argument("--schema", action="store_true", help="print the JSON output schema and exit")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    s = sub.add_parser("solve", parents=[common], help="minimum interval completion within a budget")
    s.add_argument("--input", required=True)
    s.add_argument("--k", type=_budget, required=True)
    s.add_argument("--all-minimal", action="store_true")
    s.add_argument("--solver", choices=["oracle", "branching"], default="oracle")

    s = sub.add_parser("reduce", parents=[common], help="apply the module reduction rule exhaustively")
    s.add_argument("--input", required=True)
    s.add_argument("--k", type=_budget, required=True)

    s = sub.add_parser("canon", parents=[common], help="canonical model, of the canonical completion if --k is given")
    s.add_argument("--input", required=True)
    s.add_argument("--k", type=_budget)

    s = sub.add_parser("recognize", parents=[common], help="interval model or a minimal obstruction")
    s.add_argument("--input", required=True)

    s = sub.add_parser("verify", parents=[common], help="run one structural checker over a corpus")
    s.add_argument("--lemma", required=True, choices=list(LEMMA_SUITES))
    s.add_argument("--input", help="check a single graph instead of the exhaustive corpus")
    s.add_argument("--nmin", type=_positive, default=1)
    s.add_argument("--nmax", type=_positive, default=5)
    s.add_argument("--kmax", type=_budget, default=2)

    s = sub.add_parser("dp-check", parents=[common], help="rebuild the canonical model from DP states")
    s.add_argument("--input", required=True)
    s.add_argument("--k", type=_budget, required=True)

    for name, helptext in (("gen", "write generated instances"), ("suite", "run a named suite")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--kind", choices=list(KINDS), default="exhaustive")
        s.add_argument("--n", type=_positive, help="vertex count (exhaustive: upper end when --nmax is absent)")
        s.add_argument("--nmin", type=_positive, default=1)
        s.add_argument("--nmax", type=_positive, help="exhaustive corpus over nmin..nmax")
        s.add_argument("--p", type=float, default=0.5)
        s.add_argument("--count", type=_positive, default=1)
        s.add_argument("--fixture", help="fixture name for --kind named")
        s.add_argument("--all-graphs", action="store_true", help="exhaustive: include disconnected graphs")
    sub.choices["gen"].add_argument("--out", required=True, help="output directory")
    sub.choices["gen"].add_argument("--format", choices=["el", "g6"], default="el")
    sub.choices["suite"].add_argument("--name", dest="suite_name", required=True, choices=list(SUITES))
    sub.choices["suite"].add_argument("--kmax", type=_budget, default=2)
    sub.choices["suite"].add_argument("--all-reports", action="store_true", help="include holding reports in JSON")
    return p


def _config(args: argparse.Namespace) -> Config:
    if isinstance(args.as_json, str) and args.command != "suite":
        raise UsageError("--json takes a path only for suite")
    output = "json" if args.as_json else args.output
    try:
        return Config.from_env().override(vertex_cap=args.vertex_cap, oracle_cap=args.oracle_cap,
                                          event_cap=args.event_cap, seed=args.seed, jobs=args.jobs,
                                          output=output)
    except ValueError as exc:
        raise UsageError(f"bad configuration: {exc}") from exc


def _load(path: str, config: Config) -> Graph:
    try:
        return read_graph(path, cap=config.vertex_cap)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _emit(payload: dict, text: str, config: Config) -> None:
    if config.output == "json":
        print(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, sort_keys=True))
    else:
        print(text)


def _pairs_text(f) -> str:
    return " ".join(f"{u}-{v}" for u, v in f) or "(none)"


# -- commands ----------------------------------------------------------------


def cmd_solve(args, config: Config) -> int:
    g = _load(args.input, config)
    try:
        if args.solver == "oracle":
            res = solve_oracle(g, args.k, all_minimal=args.all_minimal, cap=config.oracle_cap)
        else:
            res = solve_branching(g, args.k, canonical=True)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if res.solved:
        text = f"solved opt={res.opt} canonical={_pairs_text(res.canonical)}\nmodel {res.canonical_model}"
    else:
        text = f"over_budget k={args.k}"
    _emit(res.to_dict(), text, config)
    return OK if res.solved else INFEASIBLE


def cmd_reduce(args, config: Config) -> int:
    g = _load(args.input, config)
    red = reduce_exhaustively(g, args.k)
    payload = {"no_instance": red.no_instance, "kept": list(red.kept), "trace": [s.to_dict() for s in red.trace]}
    if red.graph is not None:
        payload["edge_list"] = format_edge_list(red.graph)
    lines = [f"step {i}: " + json.dumps(s.to_dict(), sort_keys=True) for i, s in enumerate(red.trace)]
    lines.append("no_instance" if red.no_instance else f"kept {' '.join(map(str, red.kept))}")
    _emit(payload, "\n".join(lines), config)
    return INFEASIBLE if red.no_instance else OK


def cmd_canon(args, config: Config) -> int:
    g = _load(args.input, config)
    f: tuple = ()
    if args.k is not None:
        res = solve_oracle(g, args.k, cap=config.oracle_cap)
        if not res.solved:
            _emit({"status": res.status}, res.status, config)
            return INFEASIBLE
        f = res.canonical
    elif isinstance(recognize(g), NotInterval):
        _emit({"status": "not_interval"}, "not_interval", config)
        return INFEASIBLE
    m = canonical_model(g.plus(f))
    _emit({"model": str(m), "completion": [list(p) for p in f]}, str(m), config)
    return OK


def cmd_recognize(args, config: Config) -> int:
    g = _load(args.input, config)
    out = recognize(g)
    if isinstance(out, NotInterval):
        w = sorted(out.witness)
        _emit({"interval": False, "witness": w}, "not_interval witness " + " ".join(map(str, w)), config)
        return INFEASIBLE
    m = canonical_model(g)
    _emit({"interval": True, "model": str(m)}, str(m), config)
    return OK


def cmd_verify(args, config: Config) -> int:
    if args.input:
        graphs = [_load(args.input, config)]
    else:
        if args.nmax > 9:
            raise UsageError("the exhaustive corpus stops at 9 vertices")
        graphs = list(exhaustive_upto(args.nmax, nmin=args.nmin))
    result = run_suite(args.lemma, graphs, args.kmax, config)
    line = result.summary.line()
    if config.output == "json":
        print(json.dumps({"schema_version": SCHEMA_VERSION, "summary": result.summary.to_dict(),
                          "reports": [r.to_dict() for r in result.reports]}, sort_keys=True))
    else:
        for r in result.violations:
            print(json.dumps(r.to_dict(), sort_keys=True))
    print(line, file=sys.stderr if config.output == "json" else sys.stdout)
    return OK if result.ok else VIOLATION


def cmd_dp_check(args, config: Config) -> int:
    g = _load(args.input, config)
    res = solve_oracle(g, args.k, cap=config.oracle_cap)
    if not res.solved:
        _emit({"status": "over_budget"}, "over_budget", config)
        return INFEASIBLE
    ga = augment(g)
    f = shifted(res.canonical)
    m = canonical_model(ga.plus(f))
    report = dp_report(ga, f, m, args.k, config.event_cap)
    status = "match" if report.holds else "mismatch"
    d = report.details
    text = f"{status} states={d.get('states')} base={d.get('base_cells')} glued={d.get('glued_cells')}\nmodel {m}"
    _emit({"status": status, "report": report.to_dict()}, text, config)
    return OK if report.holds else VIOLATION


def _graphs_from(args, config: Config) -> list[Graph]:
    try:
        if args.kind == "exhaustive":
            top = args.nmax or args.n
            if top is None:
                raise UsageError("exhaustive generation needs --n or --nmax")
            nmin = args.nmin if args.nmax else top
            if top > 9:
                raise UsageError("the exhaustive corpus stops at 9 vertices")
            return list(exhaustive_upto(top, connected=not args.all_graphs, nmin=nmin))
        spec = InstanceSpec(kind=args.kind, n=args.n or 0, p=args.p, seed=config.seed,
                            count=args.count, name=args.fixture or "")
        return list(generate(spec, cap=config.vertex_cap))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_gen(args, config: Config) -> int:
    graphs = _graphs_from(args, config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    width = len(str(max(len(graphs) - 1, 0)))
    for i, g in enumerate(graphs):
        path = out / f"{args.kind}-{i:0{width}d}.{args.format}"
        body = format_edge_list(g) if args.format == "el" else format_graph6(g) + "\n"
        path.write_text(body)
        written.append(str(path))
    _emit({"written": written}, f"wrote {len(written)} graphs to {out}", config)
    return OK


def cmd_suite(args, config: Config) -> int:
    graphs = _graphs_from(args, config)
    result = run_suite(args.suite_name, graphs, args.kmax, config)
    payload = result.to_dict(all_reports=args.all_reports)
    report = args.as_json if isinstance(args.as_json, str) else None
    if report:
        Path(report).write_text(json.dumps({"schema_version": SCHEMA_VERSION, **payload},
                                                sort_keys=True, indent=2) + "\n")
    line = f"{args.suite_name} instances={result.instances} {result.summary.line()}"
    if config.output == "json" and not report:
        print(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, sort_keys=True))
    else:
        for r in result.violations:
            print(json.dumps(r.to_dict(), sort_keys=True))
        print(line)
    return OK if result.ok else VIOLATION


COMMANDS = {
    "solve": cmd_solve,
    "reduce": cmd_reduce,
    "canon": cmd_canon,
    "recognize": cmd_recognize,
    "verify": cmd_verify,
    "dp-check": cmd_dp_check,
    "gen": cmd_gen,
    "suite": cmd_suite,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.schema:
        print(json.dumps(SCHEMA, indent=2, sort_keys=True))
        return OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return USAGE
    try:
        config = _config(args)
        return COMMANDS[args.command](args, config)
    except UsageError as exc:
        print(f"intcomp {args.command}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
