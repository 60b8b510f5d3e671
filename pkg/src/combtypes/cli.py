"""Command-line front end: ``infer``, ``reduce``, ``desugar`` and ``bench``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import prelude
from .bench import format_table, max_ratio, run_bench
from .corpus import BUILTINS, builtin, load_corpus
from .inference import DEFAULT_BUDGET_FACTOR, Typed, Untypable, default_limit, infer
from .kernel import Reducer
from .surface import ParseError, parse_context, print_term, print_type, read_term

EXIT_TYPED, EXIT_UNTYPABLE, EXIT_BUDGET, EXIT_PARSE = 0, 1, 2, 3
# ``reduce`` reuses EXIT_BUDGET when the step limit is hit.


def _read(src: str):
    try:
        return read_term(src)
    except (ParseError, LookupError) as e:
        print(f"error: {e}", file=sys.stderr)
        return None


def cmd_infer(args) -> int:
    term = _read(args.term)
    if term is None:
        return EXIT_PARSE
    try:
        gamma = parse_context(args.context) if args.context else []
    except ParseError as e:
        print(f"error in --context: {e}", file=sys.stderr)
        return EXIT_PARSE
    limit = args.limit if args.limit is not None else default_limit(term, args.budget_factor)
    report = infer(term, gamma, limit)
    code = {"yes": EXIT_TYPED, "no": EXIT_UNTYPABLE, "budget": EXIT_BUDGET}[report.verdict]
    ratio = None if report.ratio is None else float(report.ratio)
    if args.format == "json":
        out = {"input": args.term, "size": report.term_size, "verdict": report.verdict,
               "calls": report.calls, "ratio": ratio, "limit": limit}
        if report.type is not None:
            out["type"] = print_type(report.type)
        if isinstance(report.outcome, Untypable):
            out["path"] = list(report.outcome.path)
            out["reason"] = report.outcome.reason
        print(json.dumps(out, ensure_ascii=False))
        return code
    match report.outcome:
        case Typed(ty):
            print(print_type(ty))
        case Untypable(path, reason):
            where = ".".join(path) or "root"
            print(f"untypable at {where}: {reason}")
        case _:
            print(f"out of budget after {report.calls} calls (limit {limit})")
    print(f"size {report.term_size}, calls {report.calls}, ratio {ratio:.2f}", file=sys.stderr)
    return code


def _prelude_name(t) -> Optional[str]:
    if t.size == 1:
        return None
    for name in prelude.names():
        if prelude.get(name) is t:
            return name
    return None


def cmd_reduce(args) -> int:
    term = _read(args.term)
    if term is None:
        return EXIT_PARSE
    r = Reducer(term)
    if args.trace:
        print(f"0: {print_term(term)}")
    while r.steps < args.steps and r.step():
        if args.trace:
            print(f"{r.steps}: {print_term(r.term)}")
    term, steps = r.term, r.steps
    if not term.normal:
        print(f"no normal form within {args.steps} steps", file=sys.stderr)
        return EXIT_BUDGET
    name = _prelude_name(term)
    print(print_term(term) + (f"  (= {name})" if name else ""))
    print(f"{steps} steps", file=sys.stderr)
    return 0


def cmd_desugar(args) -> int:
    term = _read(args.term)
    if term is None:
        return EXIT_PARSE
    print(f"{print_term(term)}, size {term.size}")
    return 0


def cmd_bench(args) -> int:
    try:
        entries = builtin(args.corpus) if args.corpus in BUILTINS else load_corpus(args.corpus)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    rows = run_bench(entries, args.budget_factor, args.limit)
    if args.format == "json":
        for row in rows:
            print(row.to_json())
    else:
        print(format_table(rows))
    top = max_ratio(rows)
    if top is not None:
        print(f"max ratio over typed rows: {float(top.ratio):.2f} ({top.label})",
              file=sys.stderr if args.format == "json" else sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="combtypes", description="Abstract combinatory types for SK terms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("infer", help="infer the type of a term")
    p.add_argument("term")
    p.add_argument("--budget-factor", type=int, default=DEFAULT_BUDGET_FACTOR,
                   help="call limit as a multiple of the term size (default %(default)s)")
    p.add_argument("--limit", type=int, help="absolute call limit; overrides the factor")
    p.add_argument("--context", help='variable types, e.g. "x:Bool, y:Nat*Nat"')
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("reduce", help="reduce a term leftmost-outermost")
    p.add_argument("term")
    p.add_argument("--steps", type=int, default=10**6)
    p.add_argument("--trace", action="store_true", help="print every contraction")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("desugar", help="print the elaborated combinator and its size")
    p.add_argument("term")
    p.set_defaults(func=cmd_desugar)

    p = sub.add_parser("bench", help="inference metrics over a corpus")
    p.add_argument("corpus", nargs="?", default="reference",
                   help=f"builtin corpus ({', '.join(BUILTINS)}) or a corpus file")
    p.add_argument("--budget-factor", type=int, default=DEFAULT_BUDGET_FACTOR)
    p.add_argument("--limit", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "budget_factor", 1) < 1:
        print("error: --budget-factor must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
