"""Recompute the named fixture arrangements from scratch.

A fixture is an arrangement that the shipped certificates do not realize
and that is singled out by a combinatorial property: symmetry order, the
triangle filters, triangle and digon counts on circle sides.  The script
enumerates the relevant classes, removes every code that has a shipped
certificate and applies the selection rules below.  It writes an ``.arrs``
file that can replace ``src/pcarr/data/fixtures.arrs``.

The connected n=6 part needs the full connected census (several minutes);
pass ``--skip-connected`` to leave those fixtures out.

    python3 scripts/identify_fixtures.py --out fixtures.arrs
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from itertools import combinations

from pcarr.classifier import filter_krupp_triangles
from pcarr.enumerate import enumerate_keys
from pcarr.maps import Arrangement, TripleType, automorphism_order, from_key, triple_type
from pcarr.store import format_arrs, shipped_certificates, write_text


def side_profile(arr: Arrangement, c: int) -> list[tuple[int, int]]:
    """(digons, triangles) on each side of circle ``c``."""
    fid, cid, sides = arr.face_of, arr.circle_of, arr.face_sides
    touching = {int(fid[d]) for d in range(len(fid)) if cid[d] == c}
    out = []
    for side in (0, 1):
        fs = [f for f in touching if (sides[f] >> c) & 1 == side]
        out.append((sum(arr.face_sizes[f] == 2 for f in fs), sum(arr.face_sizes[f] == 3 for f in fs)))
    return sorted(out)


def face_circles(arr: Arrangement) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {}
    for d in range(len(arr.face_of)):
        out.setdefault(int(arr.face_of[d]), set()).add(int(arr.circle_of[d]))
    return out


def triangle_multiset(arr: Arrangement) -> Counter:
    fc = face_circles(arr)
    return Counter(tuple(sorted(fc[f])) for f in fc if arr.face_sizes[f] == 3)


def miquel_pairs(arr: Arrangement) -> int:
    """Pairs of disjoint circles set up like the cube example.

    Each circle of the pair has a side with six triangles whose apexes are
    two crossings, and the four apex crossings link the other four circles
    in a cycle.
    """
    fid, cid, sides = arr.face_of, arr.circle_of, arr.face_sides
    darts: dict[int, list[int]] = {}
    for d in range(len(fid)):
        darts.setdefault(int(fid[d]), []).append(d)
    apexes = {}
    for c in range(arr.n):
        for side in (0, 1):
            tris = [f for f, ds in darts.items() if arr.face_sizes[f] == 3
                    and c in {int(cid[d]) for d in ds} and (sides[f] >> c) & 1 == side]
            if len(tris) != 6:
                continue
            ap = set()
            for f in tris:
                for v in {d // 4 for d in darts[f]}:
                    if c not in arr.vertex_circles(v):
                        ap.add(tuple(sorted(arr.vertex_circles(v))))
            apexes[c] = ap
    count = 0
    for i, j in combinations(sorted(apexes), 2):
        if arr.crossings[i][j]:
            continue
        pairs = apexes[i] | apexes[j]
        rest = set(range(arr.n)) - {i, j}
        if len(pairs) == 4 and all(sum(o in p for p in pairs) == 2 for o in rest):
            count += 1
    return count


def digons(arr: Arrangement) -> int:
    return arr.flags.p2


def name_n5(unrealized: list[bytes]) -> dict[str, bytes]:
    out = {}
    plain4 = []
    for k in unrealized:
        arr = from_key(k)
        aut = automorphism_order(arr)
        if arr.flags.intersecting:
            out["N5^1"] = k
        elif aut == 8:
            out["N5^2"] = k
        elif aut == 2:
            out["N5^3"] = k
        else:
            plain4.append(k)
    if len(plain4) != 1 or len(out) != 3:
        raise SystemExit(f"unexpected n=5 residue: {len(unrealized)} codes")
    out["N5^4"] = plain4[0]
    return out


def name_intersecting6(i6: set[bytes], realized: set[bytes]) -> dict[str, bytes]:
    out = {}
    df = sorted(k for k in i6 if k not in realized and digons(from_key(k)) == 0)
    kt = sorted(k for k in i6 if not from_key(k).flags.great and filter_krupp_triangles(from_key(k)))
    for k in df:
        arr = from_key(k)
        if automorphism_order(arr) == 24:
            out["N6^1"] = k
        elif k in kt:
            out["N6^2"] = k
        else:
            out["N6^3"] = k
    others = [k for k in kt if k != out.get("N6^2")]
    if len(others) != 1:
        raise SystemExit(f"expected one more Krupp-filter hit, got {len(others)}")
    out["N6^kt2"] = others[0]

    sym6 = [k for k in sorted(i6) if k not in realized and digons(from_key(k)) > 0
            and automorphism_order(from_key(k)) == 6]
    for k in sym6:
        arr = from_key(k)
        prof = [side_profile(arr, c) for c in range(arr.n)]
        tt = triangle_multiset(arr)
        krupp4 = [t for t, m in tt.items() if m == 4 and triple_type(arr, *t) is TripleType.KRUPP]
        if krupp4:
            # an inner Krupp whose four triangles sit inside an outer NonKrupp
            out["N6^ER"] = k
        elif sum((0, 2) in p for p in prof) >= 3:
            out["N6^i6:2"] = k
        elif sum((0, 3) in p for p in prof) >= 3:
            out["N6^i6:3"] = k
    return out


def name_connected6(c6df: set[bytes], realized: set[bytes]) -> dict[str, bytes]:
    out = {}
    by_aut: dict[int, list[bytes]] = {}
    for k in sorted(c6df):
        arr = from_key(k)
        if k in realized or arr.flags.intersecting:
            continue
        by_aut.setdefault(automorphism_order(arr), []).append(k)
    if len(by_aut.get(24, [])) == 1:
        out["N6^c24"] = by_aut[24][0]
    eights = sorted(by_aut.get(8, []), key=lambda k: -miquel_pairs(from_key(k)))
    if len(eights) == 2:
        out["N6^c8:1"], out["N6^c8:2"] = eights
    fours = by_aut.get(4, [])
    if len(fours) == 2:
        # no combinatorial property told apart in the source: code order
        out["N6^c4:1"], out["N6^c4:2"] = sorted(fours)
    return out


def annotate(name: str, key: bytes) -> tuple:
    arr = from_key(key)
    f = arr.flags
    ann = {"name": name, "aut": automorphism_order(arr), "p2": f.p2, "p3": f.p3,
           "intersecting": int(f.intersecting), "digonfree": int(f.p2 == 0)}
    return arr.code, ann


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="-")
    ap.add_argument("--skip-connected", action="store_true")
    args = ap.parse_args(argv)

    realized = {c.key for c in shipped_certificates()}
    print(f"{len(realized)} shipped certificates", file=sys.stderr)
    names: dict[str, bytes] = {}

    c5 = enumerate_keys(5, "connected")
    names.update(name_n5(sorted(k for k in c5 if k not in realized)))

    i6 = enumerate_keys(6, "intersecting", method="flip", long_run=True)
    names.update(name_intersecting6(i6, realized))
    print(f"intersecting n=6: {len(i6)} codes", file=sys.stderr)

    if not args.skip_connected:
        c6df = enumerate_keys(6, "connected-digonfree", long_run=True)
        print(f"connected digon-free n=6: {len(c6df)} codes", file=sys.stderr)
        names.update(name_connected6(c6df, realized))

    items = [annotate(name, k) for name, k in names.items()]
    write_text(args.out, format_arrs(items, header="named arrangements without a circle realization"))
    for name in sorted(names):
        print(f"{name}\t{automorphism_order(from_key(names[name]))}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
