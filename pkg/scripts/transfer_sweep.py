"""Conjugate and coset transfer of subgroup codes over the test corpus."""

import argparse
from collections import Counter

from cayleysum.codes import coset_transfer_check, inner_transfer_check, iter_class_subsets
from cayleysum.corpus import ACCEPTANCE_CORPUS, parse_descriptor
from cayleysum.graphs import normal_subset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-classes", type=int, default=12)
    args = ap.parse_args()
    tested, failed = Counter(), Counter()
    for desc in ACCEPTANCE_CORPUS:
        G = parse_descriptor(desc)
        if len(G.classes) > args.max_classes:
            continue
        subsets = [normal_subset(G, ids) for ids in iter_class_subsets(G, include_identity=False)]
        for H in G.subgroups:
            invols = [b for b in range(G.n) if b not in H and G.mul[b][b] == G.identity
                      and G.conj_mask(H.mask, b) == H.mask]
            for X in subsets:
                for kind in ("perfect", "total-perfect"):
                    tested["inner", kind] += 1
                    failed["inner", kind] += not inner_transfer_check(G, H, X, kind)
                    for b in invols:
                        tested["coset", kind] += 1
                        failed["coset", kind] += not coset_transfer_check(G, H, X, b, kind)
    for key in sorted(tested):
        print(f"{key[0]:<6} {key[1]:<14} tested={tested[key]} failed={failed[key]}")


if __name__ == "__main__":
    main()
