"""Run every check on the default and extended corpora and write the JSON matrices."""
import argparse
import json
import time
from pathlib import Path

from centaut.corpus import NAMED
from centaut.oracle import Budget
from centaut.verify import verify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpora", nargs="+", default=["default", "extended"], choices=sorted(NAMED))
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--budget", type=int, default=None, help="oracle cap on group order")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    budget = Budget.from_env(max_order=args.budget) if args.budget else Budget.from_env()
    failed = False
    for name in args.corpora:
        start = time.perf_counter()
        report = verify(NAMED[name], budget)
        elapsed = time.perf_counter() - start
        print(f"== {name} corpus ({len(NAMED[name])} groups, {elapsed:.1f}s)")
        print(report.render())
        (args.out / f"verify_{name}.json").write_text(json.dumps(report.as_dict(), sort_keys=True, indent=2))
        failed |= report.failed
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
