"""Acceptance criteria 1-10, one test each.

Every test records a one-line verdict that the terminal summary prints as
``ACCEPTANCE <k>: PASS|FAIL|SKIP  <detail>``.  Parts that need hours of
CPU (the connected n=6 census) only run with PCARR_LONG=1; the
verdict line says so.
"""

import random
import time
from collections import Counter

import pytest

from pcarr import _kernels as K
from pcarr.classifier import (Status, classify, fixture_names, filter_krupp_triangles,
                              filter_nonkrupp_triangles, load_fixtures)
from pcarr.enumerate import Census, _seed, enumerate_keys
from pcarr.flips import flip_graph
from pcarr.geometry import (CircleArrangement, DegenerateScene, PrecondViolated, check_miquel,
                            check_radical_concurrency, extract_arrangement, krupp_predicate)
from pcarr.maps import automorphism_order, from_code, from_key, krupp, relabel_random, \
    triple_type, validate
from pcarr.realizer import Certificate, RealizationBudget, minimize_certificate
from pcarr.store import CertificateCache, shipped_certificates
from pcarr.cli import main as cli_main

from conftest import LONG
from oracles import euler_ok
from scenes import miquel_candidates, miquel_table, random_crossing_triple

RESULTS: dict[int, str] = {}

TABLE = {  # n -> (connected, digon-free, cylindrical, intersecting, int. digon-free, great)
    3: (3, 1, 3, 2, 1, 1),
    4: (21, 3, 20, 8, 2, 1),
    5: (984, 30, 900, 278, 14, 1),
}

_memo = {}


def memo(name, fn):
    if name not in _memo:
        _memo[name] = fn()
    return _memo[name]


def intersecting6():
    return memo("i6", lambda: enumerate_keys(6, "intersecting", method="flip", long_run=True))


def intersecting6_ext():
    return memo("i6x", lambda: enumerate_keys(6, "intersecting", method="extension", long_run=True))


def digonfree6():
    return memo("df6", lambda: {k for k in intersecting6() if _digons(k) == 0})


def _digons(key):
    return int(K.summary(from_key(key).alpha)[2])


def record(k, ok, detail, skipped=False):
    verdict = "SKIP" if skipped else ("PASS" if ok else "FAIL")
    RESULTS[k] = f"{verdict}  {detail}"
    assert ok, detail


def _row(n):
    c = Census.from_keys(n, enumerate_keys(n, "connected")).counts
    return (c["connected"], c["connected-digonfree"], c["connected-cylindrical"],
            c["intersecting"], c["intersecting-digonfree"], c["great"])


def _timed_census(n):
    K.canon(krupp().alpha)  # load compiled kernels before timing
    t0 = time.perf_counter()
    row = _row(n)
    return row, time.perf_counter() - t0


def test_criterion_1_census_n3():
    row, dt = _timed_census(3)
    ok = row[0] == 3 and row[3:] == (2, 1, 1) and dt < 1.0
    record(1, ok, f"n=3 connected/intersecting/int-digonfree/great = {row[0]}/{row[3]}/{row[4]}/{row[5]} in {dt:.2f}s")


def test_criterion_2_census_n4():
    row, dt = _timed_census(4)
    record(2, row == TABLE[4] and dt < 10, f"n=4 row {row} in {dt:.2f}s")


def test_criterion_3_census_n5():
    row, dt = _timed_census(5)
    record(3, row == TABLE[5] and dt < 300, f"n=5 row {row} in {dt:.1f}s")


def test_criterion_4_long_counts():
    i6 = intersecting6()
    df = digonfree6()
    great6 = len(enumerate_keys(6, "great"))
    great7 = len(enumerate_keys(7, "great"))
    ext = intersecting6_ext()
    ok = len(df) == 2131 and great6 == 4 and great7 == 11 and len(i6) == 145058 and ext == i6
    detail = (f"n=6 int-digonfree {len(df)}, great {great6}; n=7 great {great7}; "
              f"n=6 intersecting {len(i6)} (flip) / {len(ext)} (extension)")
    if LONG:
        conn = enumerate_keys(6, "connected", long_run=True)
        ok = ok and len(conn) == 609423
        detail += f"; connected {len(conn)}"
        record(4, ok, detail)
    else:
        record(4, ok, detail + "; connected n=6 stretch not run (PCARR_LONG=1)")


def _pipeline(tmp_path, n, cls, budget, certs=None):
    out = tmp_path / f"rec-{n}-{cls}.tsv"
    argv = ["--seed", "1", "pipeline", "--n", str(n), "--class", cls, "--out", str(out),
            "--budget-secs", str(budget)]
    if certs:
        argv += ["--certs", str(certs)]
    status = cli_main(argv)
    recs = [ln.split("\t") for ln in out.read_text().splitlines() if not ln.startswith("#")]
    return status, Counter(r[1] for r in recs)


def test_criterion_5_pipeline_small(tmp_path):
    s3, c3 = _pipeline(tmp_path, 3, "connected", 60)
    s4, c4 = _pipeline(tmp_path, 4, "connected", 120)
    ok = s3 == s4 == 0 and c3 == {"REALIZED": 3} and c4 == {"REALIZED": 21}
    record(5, ok, f"n=3 {dict(c3)}, n=4 {dict(c4)}")


def test_criterion_6_pipeline_n5(tmp_path):
    cache = tmp_path / "n5.certs"
    got = {}
    for cls in ("connected", "intersecting", "intersecting-digonfree"):
        status, counts = _pipeline(tmp_path, 5, cls, 1200, cache)
        got[cls] = (counts.get("REALIZED", 0), counts.get("NONCIRC", 0), counts.get("OPEN", 0), status)
    want = {"connected": (980, 4, 0, 0), "intersecting": (277, 1, 0, 0),
            "intersecting-digonfree": (14, 0, 0, 0)}
    record(6, got == want, f"(REALIZED, NONCIRC, OPEN, exit) {got}")


def test_criterion_7_filters_n6():
    names = {v: k for k, v in fixture_names().items()}
    nk = {k for k in digonfree6() if filter_nonkrupp_triangles(from_key(k))}
    kr = set()
    for k in intersecting6():
        arr = from_key(k)
        if arr.flags.great:
            continue
        if filter_krupp_triangles(arr):
            kr.add(k)
    want_nk = {names["N6^1"].key}
    want_kr = {names["N6^2"].key, names["N6^kt2"].key}
    record(7, nk == want_nk and kr == want_kr,
           f"nonkrupp filter hits {len(nk)} (N6^1: {nk == want_nk}); "
           f"krupp filter hits {len(kr)} (N6^2 + N6^kt2: {kr == want_kr})")


PUBLISHED_AUT = {"N5^1": 4, "N5^2": 8, "N5^3": 2, "N5^4": 4,
             "N6^1": 24, "N6^2": 3, "N6^3": 6,
             "N6^ER": 6, "N6^i6:2": 6, "N6^i6:3": 6,
             "N6^c24": 24, "N6^c8:1": 8, "N6^c8:2": 8, "N6^c4:1": 4, "N6^c4:2": 4}


def test_criterion_8_fixture_symmetry():
    fx = load_fixtures()
    got = {name: automorphism_order(from_code(fx[name].code)) for name in PUBLISHED_AUT}
    bad = {name: (got[name], want) for name, want in PUBLISHED_AUT.items() if got[name] != want}
    p3 = from_code(fx["N6^1"].code).flags.p3
    ok = not bad and p3 == 8
    record(8, ok, f"p3(N6^1)={p3}; mismatches (computed, expected): {bad or 'none'}")


def test_criterion_9_flip_connectivity():
    parts = []
    ok = True
    for n in (4, 5, 6):
        g = flip_graph([_seed(n)], "t", "intersecting-digonfree")
        if n < 6:
            whole = enumerate_keys(n, "intersecting-digonfree", method="extension")
        else:
            whole = {k for k in intersecting6_ext() if _digons(k) == 0}
        good = g.is_connected() and set(g.keys) == whole
        ok = ok and good
        parts.append(f"n={n}: {len(g)}/{len(whole)} {'connected' if good else 'NOT connected'}")
    record(9, ok, "; ".join(parts))


def test_criterion_10_properties():
    rng = random.Random(2024)
    fails = []
    # relabel invariance: 1000 relabelings over 50 arrangements
    pool = sorted(enumerate_keys(5, "connected"))
    chosen = rng.sample(pool, 50)
    for k in chosen:
        arr = from_key(k)
        for _ in range(20):
            cmap = relabel_random(arr, rng)
            if rng.random() < 0.5:
                cmap = cmap.mirror()
            if validate(cmap).code != arr.code:
                fails.append("relabel")
    # Euler on every enumerated map up to n=5 and the n=6 digon-free class
    for n in (3, 4, 5):
        for k in enumerate_keys(n, "connected"):
            if not euler_ok(from_key(k)):
                fails.append("euler")
    for k in digonfree6():
        if not euler_ok(from_key(k)):
            fails.append("euler6")
    # krupp predicate against the combinatorial triple type
    done = 0
    while done < 1000:
        cs = random_crossing_triple(rng)
        try:
            arr = extract_arrangement(CircleArrangement(cs))
        except DegenerateScene:
            continue
        done += 1
        if krupp_predicate(*cs) is not triple_type(arr, 0, 1, 2):
            fails.append("krupp")
    for _ in range(500):
        if not check_radical_concurrency(*random_crossing_triple(rng)):
            fails.append("radical")
    pts, table = miquel_table()
    stream = miquel_candidates(rng, pts, table)
    done = 0
    while done < 500:
        cs, w = next(stream)
        try:
            good = check_miquel(*cs, w)
        except PrecondViolated:
            continue
        done += 1
        if not good:
            fails.append("miquel")
    # certificate round trip on the shipped cache, minimize idempotence
    certs = shipped_certificates()
    for c in certs:
        if extract_arrangement(c.scene).code != c.code:
            fails.append("roundtrip")
    for c in rng.sample(certs, 20):
        m = minimize_certificate(c)
        if minimize_certificate(m) != m or m.code != c.code:
            fails.append("minimize")
    record(10, not fails, f"{len(certs)} shipped certificates; failures: {Counter(fails) or 'none'}")
