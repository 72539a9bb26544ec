"""Run every verification suite and print one summary line per suite."""

import argparse
import json
import time

from cayleysum.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--suites", nargs="*", default=list(SUITES), choices=SUITES)
    args = ap.parse_args()
    failed = 0
    for name in args.suites:
        t0 = time.perf_counter()
        res = run_suite(name, jobs=args.jobs)
        failed += res.failed
        print(json.dumps({**res.summary(), "seconds": round(time.perf_counter() - t0, 2)}, sort_keys=True))
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
