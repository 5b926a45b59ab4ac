"""Generators of exact circle configurations for property tests."""

import itertools
import math
import random

from pcarr.geometry import Circle, PairRelation, pair_relation

MIQUEL_R = 65
_BOX = 120


def lattice_points(r: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(-r, r + 1) for y in range(-r, r + 1) if x * x + y * y == r * r]


def _through(p, q) -> list[Circle]:
    """Integer circles with both lattice points ``p`` and ``q`` on them."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    out = []
    if dy == 0:
        return out
    for ox in range(-_BOX, _BOX + 1):
        if (ox * dx) % dy:
            continue
        oy = -ox * dx // dy
        if abs(oy) > _BOX:
            continue
        r2 = (ox - p[0]) ** 2 + (oy - p[1]) ** 2
        r = math.isqrt(r2)
        if r > 0 and r * r == r2:
            out.append(Circle(ox, oy, r))
    return out


def miquel_table():
    pts = lattice_points(MIQUEL_R)
    table = {}
    for p, q in itertools.combinations(pts, 2):
        cs = _through(p, q)
        if cs:
            table[(p, q)] = table[(q, p)] = cs
    return pts, table


def miquel_candidates(rng: random.Random, pts, table):
    """Endless stream of (c1, c2, c3, c4, witness) candidates."""
    witness = Circle(0, 0, MIQUEL_R)
    while True:
        a, b, c, d = rng.sample(pts, 4)
        try:
            yield ([rng.choice(table[(d, a)]), rng.choice(table[(a, b)]),
                    rng.choice(table[(b, c)]), rng.choice(table[(c, d)])], witness)
        except KeyError:
            continue


def random_crossing_triple(rng: random.Random, k: int = 30):
    while True:
        cs = [Circle(rng.randint(-k, k), rng.randint(-k, k), rng.randint(1, k)) for _ in range(3)]
        if all(pair_relation(x, y) is PairRelation.CROSSING for x, y in itertools.combinations(cs, 2)):
            return cs
