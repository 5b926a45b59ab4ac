import random

import pytest

from pcarr.enumerate import _seed, enumerate_class
from pcarr.flips import FlipGraph, flip_graph
from pcarr.geometry import CircleArrangement
from pcarr.maps import krupp, nonkrupp
from pcarr.realizer import (Certificate, NotVerified, RealizationBudget, minimize_certificate,
                            neighbor_seeded_search, perturb_search, random_search, realize_codes)

KRUPP_CERT = Certificate(krupp().code, CircleArrangement([(0, 0, 2), (2, 0, 2), (1, 2, 2)]))


def test_certificate_verifies():
    with pytest.raises(NotVerified):
        Certificate(nonkrupp().code, KRUPP_CERT.scene)
    with pytest.raises(NotVerified):
        Certificate(krupp().code, CircleArrangement([(0, 0, 1), (2, 0, 1), (1, 5, 1)]))


def test_budget_validation():
    with pytest.raises(ValueError):
        RealizationBudget(max_seconds=0)


def test_random_search_n3():
    targets = enumerate_class(3, "intersecting")
    got = random_search(targets, 3, RealizationBudget(max_seconds=20, K=20), 1)
    assert {c.code for c in got} == set(targets)


def test_random_search_reproducible():
    targets = enumerate_class(4, "connected")
    budget = RealizationBudget(max_seconds=30, K=20)
    a = random_search(targets[:5], 4, budget, 42)
    b = random_search(targets[:5], 4, budget, 42)
    assert [c.scene for c in a] == [c.scene for c in b]


def test_random_search_n4_intersecting():
    targets = enumerate_class(4, "intersecting")
    got = random_search(targets, 4, RealizationBudget(max_seconds=60), 2)
    assert {c.code for c in got} == set(targets)


def test_perturb_zero_jitter_is_identity():
    assert perturb_search(KRUPP_CERT, [nonkrupp().code], RealizationBudget(), 0, jitter=0) == []


def test_perturb_reaches_nonkrupp():
    got = perturb_search(KRUPP_CERT, [nonkrupp().code], RealizationBudget(max_restarts=20000), 3)
    assert [c.code for c in got] == [nonkrupp().code]


def test_neighbor_seeded_digonfree_n5():
    g = flip_graph([_seed(5)], "t", "intersecting-digonfree")
    seeds = random_search(g.codes(), 5, RealizationBudget(max_seconds=120), 5)
    assert seeds
    start = {seeds[0].key: seeds[0]}
    got = neighbor_seeded_search(g, start, RealizationBudget(max_seconds=300), 1)
    assert len(got) + 1 == 14


def test_neighbor_seeded_without_seeds():
    g = flip_graph([_seed(4)], "t", "intersecting")
    assert neighbor_seeded_search(g, {}, RealizationBudget(max_seconds=5), 0) == []


def test_minimize_gcd_and_idempotence():
    scaled = Certificate(KRUPP_CERT.code, KRUPP_CERT.scene.scaled(7))
    small = minimize_certificate(scaled)
    assert small.scene.max_abs() <= 4
    assert minimize_certificate(small) == small
    assert small.code == KRUPP_CERT.code


def test_minimize_never_grows():
    rng = random.Random(0)
    for cert in random_search(enumerate_class(4, "connected"), 4,
                              RealizationBudget(max_seconds=20), rng)[:6]:
        small = minimize_certificate(cert)
        assert small.code == cert.code
        assert small.scene.max_abs() <= cert.scene.max_abs()


def test_realize_codes_reports_budget():
    res = realize_codes(enumerate_class(4, "connected"), {}, RealizationBudget(max_seconds=120), 0)
    assert len(res.certificates) == 21 and not res.budget_exceeded


def test_symmetric_search_hits_symmetric_codes():
    from pcarr.realizer import symmetric_search
    # the great n=4 arrangement has a large symmetry group
    targets = enumerate_class(4, "great")
    got = symmetric_search(targets, 4, RealizationBudget(max_seconds=60), random.Random(1))
    assert [c.code for c in got] == targets
    for c in got:
        assert all(isinstance(x, int) for x in c.scene.params())
