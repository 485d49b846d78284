"""Tabulate Aut_c(G), the Hom ring and the order-p criterion for a corpus."""
import argparse

from centaut.corpus import NAMED, load_corpus
from centaut.report import analyze


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpus", default="extended", help="'default', 'extended' or a corpus file")
    args = ap.parse_args()
    specs = NAMED.get(args.corpus) or load_corpus(args.corpus)
    header = f"{'group':<32} {'|G|':>4} {'|Z|':>4} {'d,d1,d2':>8} {'|R|':>5} {'radical':>7} {'class':>5} " \
             f"{'|Aut_c|':>7} {'criterion':>16}"
    print(header)
    print("-" * len(header))
    for spec in specs:
        r = analyze(spec)
        dd = ",".join(str(r[k]) for k in ("d", "d1", "d2")) if "d" in r else "-"
        cls = r["ring"].get("class", "-")
        print(f"{spec:<32} {r['order']:>4} {r['center_order']:>4} {dd:>8} {r['ring']['size']:>5} "
              f"{str(r['ring']['radical']):>7} {cls:>5} {r['autc_order']:>7} {str(r['criterion']):>16}")


if __name__ == "__main__":
    main()
