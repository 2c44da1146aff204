"""Command-line front end.

Subcommands:
    eval    evaluate a formula against a KB's exact incidences
    query   run the query directives recorded in a KB
    solve   propagate incidence bounds and dump the result
    sample  synthesise incidences from a targets file
    ingest  convert an observation table into KB directives

Exit codes: 0 on success (and on a consistent solve), 1 when solve finds
an inconsistency, 2 for usage, parse, or data errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .construct import (
    RecordTable,
    TargetSpec,
    incidences_from_probabilities,
    incidences_from_records,
    parse_targets,
)
from .errors import IncalcError
from .kb import KnowledgeBase, kb_fragment, parse_kb
from .logic import format_formula
from .probability import cond_prob, correlation, prob
from .propagation import propagate
from .rational import format_prob


def _load_kb(path: str) -> KnowledgeBase:
    return parse_kb(Path(path).read_text())


def _cmd_eval(args) -> int:
    kb = _load_kb(args.kb)
    sentence = kb.resolve(args.formula)
    from .logic import incidence_of

    inc = incidence_of(sentence, kb.environment(), kb.space)
    print(inc.to_bitstring())
    print(inc.to_point_set())
    print(f"p = {format_prob(kb.space.weight_of(inc))}")
    return 0


def _cmd_query(args) -> int:
    kb = _load_kb(args.kb)
    env = kb.environment()
    for q in kb.queries:
        if q.kind == "prob":
            value = format_prob(prob(q.f, env, kb.space))
            print(f"prob {format_formula(q.f)} = {value}")
        elif q.kind == "cond":
            value = format_prob(cond_prob(q.f, q.g, env, kb.space))
            print(f"cond {format_formula(q.f)} given {format_formula(q.g)} = {value}")
        else:
            c = correlation(q.f, q.g, env, kb.space)
            print(f"corr {format_formula(q.f)} , {format_formula(q.g)} = {c}")
    return 0


def _cmd_solve(args) -> int:
    kb = _load_kb(args.kb)
    mode = "complete" if args.complete else "fixpoint"
    outcome = propagate(kb.initial_assignment(), mode)
    print(outcome.final.dump())
    if outcome.ok:
        print("CONSISTENT")
        return 0
    print(f"INCONSISTENT: {format_formula(outcome.culprit)}")
    return 1


def _cmd_sample(args) -> int:
    marginals, correlations = parse_targets(Path(args.targets).read_text())
    spec = TargetSpec(
        marginals=marginals, size=args.size, correlations=correlations, seed=args.seed
    )
    space, env = incidences_from_probabilities(spec)
    print(kb_fragment(space, env))
    return 0


def _cmd_ingest(args) -> int:
    table = RecordTable.from_text(Path(args.records).read_text())
    space, env = incidences_from_records(table)
    print(kb_fragment(space, env))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="incalc",
        description="Set-valued probabilistic reasoning over weighted sample spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a formula against exact incidences")
    p.add_argument("kb", help="knowledge-base file")
    p.add_argument("-f", "--formula", required=True, help="formula text to evaluate")
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("query", help="run the query directives in a KB")
    p.add_argument("kb", help="knowledge-base file")
    p.set_defaults(run=_cmd_query)

    p = sub.add_parser("solve", help="propagate incidence bounds")
    p.add_argument("kb", help="knowledge-base file")
    p.add_argument(
        "--complete",
        action="store_true",
        help="case-split to exact bounds (exponential; small instances only)",
    )
    p.set_defaults(run=_cmd_solve)

    p = sub.add_parser("sample", help="synthesise incidences from targets")
    p.add_argument("targets", help="targets file (prob/corr directives)")
    p.add_argument("--size", type=int, required=True, help="number of points")
    p.add_argument("--seed", type=int, default=0, help="placement seed (default 0)")
    p.set_defaults(run=_cmd_sample)

    p = sub.add_parser("ingest", help="convert an observation table to KB directives")
    p.add_argument("records", help="records file (header line, then boolean rows)")
    p.set_defaults(run=_cmd_ingest)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (IncalcError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
