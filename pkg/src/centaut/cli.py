"""``centaut analyze | verify | search-question``.

Exit codes: 0 everything passed, 1 a check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .corpus import DEFAULT_CORPUS, load_corpus
from .errors import InvalidGroupError, SpecParseError
from .oracle import Budget
from .report import analyze
from .verify import search_question, verify


def _budget(args) -> Budget:
    return Budget.from_env(max_order=args.budget) if args.budget else Budget.from_env()


def _corpus(args) -> tuple[str, ...]:
    return load_corpus(args.corpus) if args.corpus else DEFAULT_CORPUS


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _render_record(rec: dict) -> str:
    lines = []
    for key in sorted(rec):
        val = rec[key]
        if key == "witness":
            val = f"order {val['order']}, inner {val['inner']}"
        elif isinstance(val, dict):
            val = ", ".join(f"{k}={v}" for k, v in sorted(val.items()))
        lines.append(f"{key:<20} {val}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    records = [analyze(spec) for spec in (args.groups or _corpus(args))]
    if args.json:
        print(_dump(records[0] if len(records) == 1 else records))
    else:
        print("\n\n".join(_render_record(r) for r in records))
    return 0


def cmd_verify(args) -> int:
    report = verify(_corpus(args), _budget(args), args.prime_filter)
    print(_dump(report.as_dict()) if args.json else report.render())
    if report.load_errors:
        return 2
    return 1 if report.failed else 0


def cmd_search_question(args) -> int:
    hits = search_question(_corpus(args))
    print(_dump(hits) if args.json else ("\n".join(hits) if hits else "no candidates"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centaut", description="Central automorphisms of finite p-groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--corpus", help="corpus file (JSON or one spec per line) or 'default' / 'extended'")
    common.add_argument("--json", action="store_true", help="print JSON instead of a table")
    common.add_argument("--budget", type=int, help="largest group order handed to the brute-force oracle")
    common.add_argument("--prime-filter", type=int, help="only groups of this prime")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="full record for one or more groups")
    p.add_argument("groups", nargs="*", help="group specs, e.g. heisenberg:3 or product(cyclic:3,modular:3)")
    p.set_defaults(func=cmd_analyze)
    sub.add_parser("verify", parents=[common], help="check every result on a corpus").set_defaults(func=cmd_verify)
    sub.add_parser("search-question", parents=[common],
                   help="groups with d2 = d*d1 and a non-cyclic center").set_defaults(func=cmd_search_question)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecParseError, InvalidGroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
