"""Realize every code of a class and append the certificates to a cache.

This is how the shipped certificate files were produced, for example

    python3 scripts/realize.py 5 connected n5.certs --budget 3600
    python3 scripts/realize.py 6 intersecting-digonfree n6.certs --budget 3600

Codes that a filter or a fixture already proves non-circularizable are
skipped.  Reruns resume from the cache.  The last lines list the codes
that stayed open.
"""

import argparse
import random
import sys

from pcarr.classifier import fixture_names, noncirc_reason
from pcarr.enumerate import enumerate_class
from pcarr.realizer import RealizationBudget, realize_codes
from pcarr.store import CertificateCache


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="realize a class of arrangements")
    ap.add_argument("n", type=int)
    ap.add_argument("cls")
    ap.add_argument("cache")
    ap.add_argument("--budget", type=float, default=600.0, help="seconds")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--long-run", action="store_true")
    args = ap.parse_args(argv)

    codes = enumerate_class(args.n, args.cls, long_run=args.long_run)
    fixtures = fixture_names()
    patterns = {c: r for c, r in fixtures.items() if c.n < args.n}
    cache = CertificateCache(args.cache)
    targets = [c for c in codes if c not in cache
               and noncirc_reason(c.arrangement(), patterns, fixtures) is None]
    print(f"{len(codes)} codes, {len(targets)} to realize", file=sys.stderr)

    def progress(done, total):
        print(f"  {done}/{total}", file=sys.stderr)

    res = realize_codes(targets, cache.mapping(), RealizationBudget(max_seconds=args.budget),
                        random.Random(args.seed), progress=progress)
    for c in res.certificates:
        cache.add(c)
    left = [c for c in targets if c not in cache]
    print(f"certified {len(targets) - len(left)} of {len(targets)}", file=sys.stderr)
    for c in left:
        print(f"OPEN\t{c.text}")
    return 2 if left else 0


if __name__ == "__main__":
    sys.exit(main())
