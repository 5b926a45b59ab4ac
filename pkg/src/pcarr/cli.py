"""Command-line interface: ``pcarr <subcommand> ...``.

Exit status is 0 on success, 1 on a contract violation (bad input,
failed verification, contradiction) and 2 when a time budget ran out;
in the latter case whatever was computed so far is still written.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
import time

from . import __version__
from .classifier import Contradiction, Status, classify, fixture_names, noncirc_reason
from .enumerate import (CLASS_NAMES, DESK_LIMIT, LONG_RUN_LIMIT, Census, _seed, enumerate_class,
                        enumerate_keys)
from .flips import CLASSES as FLIP_CLASSES, BudgetExceeded, flip_graph
from .maps import CanonicalCode, code_text, key_to_sequence
from .realizer import RealizationBudget, realize_codes
from .store import (CertificateCache, ParseError, format_arrs, format_edges, format_records,
                    load_arrs, read_certs, verify_lines, write_text)
from .svg import export_svg

log = logging.getLogger("pcarr")

EXIT_OK, EXIT_CONTRACT, EXIT_BUDGET = 0, 1, 2


class ContractError(Exception):
    pass


def _key_code(n: int, key: bytes) -> CanonicalCode:
    return CanonicalCode(code_text(n, key_to_sequence(key)))


def _fixtures(path) -> dict[CanonicalCode, str]:
    if path is None:
        return fixture_names()
    return {code: ann.get("name", code.text) for code, ann in load_arrs(path)}


def _census_table(censuses: list[Census]) -> str:
    ns = [c.n for c in censuses]
    width = max(len(name) for name in CLASS_NAMES)
    head = " ".join(f"{'n=' + str(n):>9}" for n in ns)
    rows = [f"{'class':<{width}} {head}".rstrip()]
    for name in CLASS_NAMES:
        vals = " ".join(f"{c.counts.get(name, 0):>9}" for c in censuses)
        rows.append(f"{name:<{width}} {vals}".rstrip())
    return "\n".join(rows) + "\n"


def _read_cache(path) -> CertificateCache:
    try:
        return CertificateCache(path)
    except ParseError as exc:
        raise ContractError(f"certificate cache {path}: {exc}") from None


# ------------------------------------------------------------ subcommands

def cmd_enumerate(args) -> int:
    status = EXIT_OK
    try:
        codes = enumerate_class(args.n, args.cls, args.method, args.long_run, args.max_secs,
                                args.threads)
    except BudgetExceeded as exc:
        log.warning("%s; writing %d partial results", exc, len(exc.partial))
        codes = sorted(_key_code(args.n, k) for k in exc.partial)
        status = EXIT_BUDGET
    write_text(args.out, format_arrs(codes, f"n={args.n} class={args.cls} count={len(codes)}"))
    if args.stats:
        sys.stdout.write(_census_table([Census.from_keys(args.n, (c.key for c in codes))]))
    return status


def cmd_flipgraph(args) -> int:
    family = args.cls.split("-")[0]
    limit = (LONG_RUN_LIMIT if args.long_run else DESK_LIMIT)[family]
    if args.n > limit:
        raise ContractError(f"n={args.n} is beyond desk scale for {family}; pass --long-run")
    status = EXIT_OK
    try:
        g = flip_graph([_seed(args.n)], args.moves, args.cls, max_seconds=args.max_secs)
    except BudgetExceeded as exc:
        log.warning("%s", exc)
        g, status = exc.partial, EXIT_BUDGET
    codes = g.codes()
    edges = [(codes[i], codes[j]) for i, j in g.edges()]
    if args.out:
        write_text(args.out, format_edges(edges))
    print(f"nodes {len(codes)}")
    print(f"edges {len(edges)}")
    if args.check_connected and status == EXIT_OK:
        method = "extension" if family == "intersecting" or args.n <= DESK_LIMIT[family] else "flip"
        whole = enumerate_keys(args.n, args.cls, method=method, long_run=args.long_run,
                               threads=args.threads)
        ok = g.is_connected() and set(g.keys) == whole
        print(f"class size {len(whole)}")
        print(f"connected {'yes' if ok else 'no'}")
    return status


def _budget(args) -> RealizationBudget:
    return RealizationBudget(max_seconds=args.budget_secs, K=args.k, S=args.scale)


def cmd_realize(args) -> int:
    targets = sorted({code for code, _ in load_arrs(args.input)})
    cache = _read_cache(args.certs)
    res = realize_codes(targets, cache.mapping(), _budget(args), random.Random(args.seed))
    for c in res.certificates:
        cache.add(c)
    open_left = 0
    for code in targets:
        done = code in cache
        open_left += not done
        print(f"{'CERTIFIED' if done else 'OPEN'}\t{code.text}")
    return EXIT_BUDGET if res.budget_exceeded and open_left else EXIT_OK


def cmd_verify(args) -> int:
    with open(args.certs, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    bad = verify_lines(lines)
    for lineno, msg in bad:
        print(f"{args.certs}:{lineno}: {msg}")
    total = sum(1 for ln in lines if ln.strip() and not ln.lstrip().startswith("#"))
    print(f"{total - len(bad)} of {total} certificates verified")
    return EXIT_CONTRACT if bad else EXIT_OK


def cmd_classify(args) -> int:
    codes = [code for code, _ in load_arrs(args.input)]
    cache = _read_cache(args.certs) if args.certs else CertificateCache()
    records = classify(codes, cache.mapping(), _fixtures(args.fixtures))
    write_text(args.out, format_records(records))
    _summary(records, args.out)
    return EXIT_OK


def cmd_stats(args) -> int:
    by_n: dict[int, list[bytes]] = {}
    for path in args.input:
        for code, _ in load_arrs(path):
            by_n.setdefault(code.n, []).append(code.key)
    censuses = [Census.from_keys(n, set(keys)) for n, keys in sorted(by_n.items())]
    if not censuses:
        censuses = [Census.from_keys(0, [])]
    sys.stdout.write(_census_table(censuses))
    return EXIT_OK


def cmd_export_svg(args) -> int:
    with open(args.certs, encoding="utf-8") as fh:
        certs = read_certs(fh.read().splitlines())
    if not certs:
        raise ContractError("certificate file is empty")
    if args.code:
        want = CanonicalCode(args.code)
        certs = [c for c in certs if c.code == want]
        if not certs:
            raise ContractError("no certificate for the requested code")
    export_svg(min(certs, key=lambda c: c.code), args.out)
    return EXIT_OK


def _summary(records, out) -> None:
    counts = {s: 0 for s in Status}
    for r in records:
        counts[r.status] += 1
    # keep stdout clean when the records themselves go there
    stream = sys.stderr if out in (None, "-") else sys.stdout
    print(" ".join(f"{s.value} {counts[s]}" for s in Status), file=stream)


def cmd_pipeline(args) -> int:
    t0 = time.monotonic()
    codes = enumerate_class(args.n, args.cls, long_run=args.long_run, threads=args.threads)
    log.info("enumerated %d codes in %.1fs", len(codes), time.monotonic() - t0)
    fixtures = _fixtures(args.fixtures)
    patterns = {c: r for c, r in fixtures.items() if c.n < args.n}
    cache = _read_cache(args.certs) if args.certs else CertificateCache()
    # proven non-circularizable codes are never handed to the realizer
    targets = [c for c in codes if c not in cache
               and noncirc_reason(c.arrangement(), patterns, fixtures) is None]
    log.info("%d codes cached, %d targets for the realizer", len(codes) - len(targets), len(targets))
    res = realize_codes(targets, cache.mapping(), _budget(args), random.Random(args.seed))
    for c in res.certificates:
        cache.add(c)
    records = classify(codes, {c.key: cache.get(c) for c in codes if c in cache}, fixtures)
    write_text(args.out, format_records(records))
    _summary(records, args.out)
    still_open = any(r.status is Status.OPEN for r in records)
    return EXIT_BUDGET if res.budget_exceeded and still_open else EXIT_OK


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker processes for enumeration (default 1)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed of the pseudo-random source (default 0)")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="pcarr", parents=[common],
                                description="Arrangements of pseudocircles and circles.")
    p.add_argument("--version", action="version", version=f"pcarr {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def budget_opts(sp, default):
        sp.add_argument("--budget-secs", type=float, default=default)
        sp.add_argument("--k", type=int, default=50, help="coordinate range of random scenes")
        sp.add_argument("--scale", type=int, default=64, help="perturbation scale factor")

    sp = sub.add_parser("enumerate", parents=[common], help="list all arrangements of a class")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--class", dest="cls", choices=CLASS_NAMES, default="connected")
    sp.add_argument("--method", choices=("auto", "extension", "flip", "wiring"), default="auto")
    sp.add_argument("--long-run", action="store_true")
    sp.add_argument("--max-secs", type=float, default=None)
    sp.add_argument("--out", default="-")
    sp.add_argument("--stats", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("flipgraph", parents=[common], help="flip graph of a class")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--class", dest="cls", choices=FLIP_CLASSES, default="intersecting-digonfree")
    sp.add_argument("--moves", choices=("t", "td"), default="t")
    sp.add_argument("--check-connected", action="store_true")
    sp.add_argument("--long-run", action="store_true")
    sp.add_argument("--max-secs", type=float, default=None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_flipgraph)

    sp = sub.add_parser("realize", parents=[common], help="search circle certificates")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--certs", required=True)
    budget_opts(sp, 60.0)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("verify", parents=[common], help="re-verify a certificate file")
    sp.add_argument("--certs", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", parents=[common], help="REALIZED / NONCIRC / OPEN records")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--certs")
    sp.add_argument("--fixtures", help="named non-circularizable codes (default: shipped set)")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("stats", parents=[common], help="census table of arrangement files")
    sp.add_argument("--in", dest="input", nargs="+", required=True)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("export-svg", parents=[common], help="draw a certificate")
    sp.add_argument("--certs", required=True)
    sp.add_argument("--code")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_export_svg)

    sp = sub.add_parser("pipeline", parents=[common], help="enumerate, realize and classify")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--class", dest="cls", choices=CLASS_NAMES, default="connected")
    sp.add_argument("--long-run", action="store_true")
    sp.add_argument("--certs", help="certificate cache, read and appended to")
    sp.add_argument("--fixtures")
    sp.add_argument("--out", default="-")
    budget_opts(sp, 300.0)
    sp.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name, default in (("threads", 1), ("seed", 0), ("verbose", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ContractError, ParseError, Contradiction, ValueError) as exc:
        print(f"pcarr {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except OSError as exc:
        print(f"pcarr {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
