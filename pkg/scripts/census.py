"""Census table of arrangement classes for a range of circle counts.

    python3 scripts/census.py 3 5
    python3 scripts/census.py 6 6 --long-run     # connected n=6 by flip closure, minutes

Each column is computed from one enumeration of connected arrangements;
the finer classes are filters of it.  With --intersecting-only the n=6
column is built from the intersecting enumeration instead, which is much
faster but leaves the connected rows empty.
"""

import argparse
import sys
import time

from pcarr.enumerate import CLASS_NAMES, Census, enumerate_keys


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="census table")
    ap.add_argument("lo", type=int)
    ap.add_argument("hi", type=int)
    ap.add_argument("--long-run", action="store_true")
    ap.add_argument("--intersecting-only", action="store_true")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    cols = []
    for n in range(args.lo, args.hi + 1):
        t0 = time.perf_counter()
        family = "intersecting" if args.intersecting_only else "connected"
        keys = enumerate_keys(n, family, long_run=args.long_run, threads=args.threads)
        cols.append(Census.from_keys(n, keys))
        print(f"n={n}: {len(keys)} {family} codes in {time.perf_counter() - t0:.1f}s", file=sys.stderr)

    width = max(map(len, CLASS_NAMES))
    print(f"{'class':<{width}} " + " ".join(f"{'n=' + str(c.n):>9}" for c in cols))
    for name in CLASS_NAMES:
        print(f"{name:<{width}} " + " ".join(f"{c.counts.get(name, 0):>9}" for c in cols))
    return 0


if __name__ == "__main__":
    sys.exit(main())
