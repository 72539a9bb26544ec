"""Regular-graph decisions for abelian groups against brute force.

Lists every subgroup where the condition "H holds a nonsquare of G or
H = Phi(Q)K" and brute force disagree for total perfect codes.
"""

import argparse

from cayleysum.classify import (
    abelian_descriptors,
    abelian_tpc_decide,
    exhaustive_regular_code,
    stated_regular_tpc_condition,
)
from cayleysum.corpus import parse_descriptor


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=16)
    args = ap.parse_args()
    for desc in abelian_descriptors(args.max_order):
        G = parse_descriptor(desc)
        for H in G.subgroups:
            brute = exhaustive_regular_code(G, H, "total-perfect") is not None
            stated = stated_regular_tpc_condition(G, H)
            decided = abelian_tpc_decide(G, H, regular=True)[0]
            if stated != brute or decided != brute:
                print(f"{G.label:<12} H={list(H.members)} brute={brute} stated={stated} decided={decided}")


if __name__ == "__main__":
    main()
