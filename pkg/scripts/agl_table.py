"""Constructed versus searched subgroup codes in AGL_1(q)."""

import argparse

from cayleysum.classify import agl_construct, verify_agl_classification


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="*", default=[3, 4, 5, 7, 8])
    args = ap.parse_args()
    for q in args.q:
        for s in range(1, q - 1):
            if (q - 1) % s == 0:
                e = agl_construct(q, s)
                print(f"q={q} s={s} t={e.t} |H|={e.subgroup.order} |X|={len(e.X)} |Y|={len(e.Y)} total={e.tpc_valid}")
        for kind in ("perfect", "total-perfect"):
            rep = verify_agl_classification(q, kind)
            s = rep.summary()
            print(f"q={q} {kind:<14} matched={s['matched']} extra={s['extra']} missing={s['missing']} "
                  f"degenerate={s['degenerate']}")


if __name__ == "__main__":
    main()
