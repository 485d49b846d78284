"""Look for odd-p non-abelian groups with d2 = d*d1 whose center is not cyclic.

At corpus sizes the list is expected to be empty; the script also prints the
d-invariants it looked at.
"""
import argparse

from centaut.central import d_invariants
from centaut.corpus import NAMED, corpus_group, load_corpus
from centaut.verify import search_question


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpus", default="extended")
    args = ap.parse_args()
    specs = NAMED.get(args.corpus) or load_corpus(args.corpus)
    for spec in specs:
        G = corpus_group(spec)
        if G.prime in (None, 2) or G.is_abelian:
            continue
        d, d1, d2, _ = d_invariants(G)
        print(f"{spec:<32} d={d} d1={d1} d2={d2} d*d1={d * d1}")
    hits = search_question(specs)
    print("candidates:", hits or "none")


if __name__ == "__main__":
    main()
