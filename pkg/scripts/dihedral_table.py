"""Tabulate subgroup codes of connected Cayley sum graphs of D_2n by family."""

import argparse
from collections import Counter

from cayleysum.classify import dihedral_expected, verify_dihedral_classification


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=16)
    args = ap.parse_args()
    print(f"{'2n':>4} {'kind':<14} {'found':>6} {'extra':>6} {'missing':>8}  families")
    for n in range(1, args.n_max + 1):
        for kind in ("perfect", "total-perfect"):
            rep = verify_dihedral_classification(n, kind)
            fams = Counter(e.family for e in dihedral_expected(n, kind) if e.connected)
            fam = " ".join(f"{k}:{v}" for k, v in sorted(fams.items()))
            print(f"{2 * n:>4} {kind:<14} {len(rep.matched):>6} {len(rep.extra):>6} {len(rep.missing):>8}  {fam}")


if __name__ == "__main__":
    main()
