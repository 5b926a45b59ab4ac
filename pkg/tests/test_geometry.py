import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pcarr.geometry import (AT_INFINITY, Circle, CircleArrangement, DegenerateScene,
                            DisconnectedScene, PairNotCrossing, PairRelation, PrecondViolated,
                            check_miquel, check_radical_concurrency, concyclic, crossing_points,
                            extract_arrangement, extract_code, krupp_predicate, pair_relation,
                            radical_axis, radical_center, sign_pq, sign_two_roots,
                            triple_concurrent)
from pcarr.maps import TripleType, krupp, nonkrupp, triple_type, two_circles

from scenes import miquel_candidates, miquel_table, random_crossing_triple

KRUPP_SCENE = CircleArrangement([(0, 0, 2), (2, 0, 2), (1, 2, 2)])


def test_pair_relations():
    assert pair_relation(Circle(0, 0, 2), Circle(1, 0, 2)) is PairRelation.CROSSING
    assert pair_relation(Circle(0, 0, 1), Circle(3, 0, 1)) is PairRelation.DISJOINT_OUTSIDE
    assert pair_relation(Circle(0, 0, 1), Circle(2, 0, 1)) is PairRelation.EXTERNALLY_TANGENT
    assert pair_relation(Circle(0, 0, 3), Circle(1, 0, 1)) is PairRelation.NESTED
    assert pair_relation(Circle(0, 0, 2), Circle(1, 0, 1)) is PairRelation.INTERNALLY_TANGENT
    assert pair_relation(Circle(1, 1, 1), Circle(1, 1, 1)) is PairRelation.IDENTICAL


def test_circle_requires_integers():
    with pytest.raises(TypeError):
        Circle(0.5, 0, 1)
    with pytest.raises(ValueError):
        Circle(0, 0, 0)


def test_krupp_scene():
    assert extract_code(KRUPP_SCENE) == krupp().code
    assert krupp_predicate(*KRUPP_SCENE.circles) is TripleType.KRUPP


def test_collinear_centres_are_nonkrupp():
    cs = [Circle(0, 0, 3), Circle(4, 0, 3), Circle(8, 0, 3)]
    with pytest.raises(PairNotCrossing):
        krupp_predicate(*cs)
    cs = [Circle(0, 0, 5), Circle(3, 0, 5), Circle(6, 0, 5)]
    assert radical_center(*cs) is AT_INFINITY
    assert krupp_predicate(*cs) is TripleType.NONKRUPP
    assert extract_code(CircleArrangement(cs)) == nonkrupp().code


def test_two_circles_scene():
    assert extract_code(CircleArrangement([(0, 0, 2), (1, 0, 2)])) == two_circles().code


def test_degenerate_scenes_rejected():
    with pytest.raises(DegenerateScene):
        extract_arrangement(CircleArrangement([(0, 0, 1), (2, 0, 1)]))  # tangent
    with pytest.raises(DisconnectedScene):
        extract_arrangement(CircleArrangement([(0, 0, 1), (1, 0, 1), (10, 0, 1)]))
    # three circles through the origin
    with pytest.raises(DegenerateScene):
        extract_arrangement(CircleArrangement([(5, 0, 5), (0, 5, 5), (3, 4, 5)]))


def test_triple_concurrent():
    assert triple_concurrent(Circle(5, 0, 5), Circle(0, 5, 5), Circle(3, 4, 5))
    assert not triple_concurrent(*KRUPP_SCENE.circles)


def test_sign_helpers():
    assert sign_pq(-3, 2, 2) == -1       # -3 + 2 sqrt 2 < 0
    assert sign_pq(-3, 3, 2) == 1
    assert sign_pq(-4, 2, 4) == 0
    assert sign_two_roots(0, 1, -1, 0, 2, 2) == 0
    assert sign_two_roots(-5, 1, 1, 1, 2, 3) == 1   # sqrt2+sqrt3+sqrt6 > 5
    big = 10 ** 40
    assert sign_pq(-big, big, 1) == 0
    assert sign_pq(-(big + 1), big, 1) == -1


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_scene_invariance(seed):
    rng = random.Random(seed)
    cs = [Circle(rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(3, 25)) for _ in range(4)]
    scene = CircleArrangement(cs)
    try:
        code = extract_code(scene)
    except DegenerateScene:
        return
    assert extract_code(scene.scaled(3)) == code
    assert extract_code(scene.translated(7, -4)) == code
    assert extract_code(scene.reflected()) == code
    assert extract_code(CircleArrangement(cs[::-1])) == code


def test_krupp_predicate_matches_triple_type():
    rng = random.Random(5)
    for _ in range(1000):
        cs = random_crossing_triple(rng)
        try:
            arr = extract_arrangement(CircleArrangement(cs))
        except DegenerateScene:
            continue
        assert krupp_predicate(*cs) is triple_type(arr, 0, 1, 2)


def test_radical_concurrency_property():
    rng = random.Random(11)
    wrong = lambda c1, c2: (c2.a - c1.a, c2.b - c1.b, c1.r * c2.r + c1.a * c2.b)
    caught = 0
    for _ in range(500):
        cs = random_crossing_triple(rng)
        assert check_radical_concurrency(*cs)
        caught += not check_radical_concurrency(*cs, axis=wrong)
    assert caught > 400


def test_miquel_property():
    pts, table = miquel_table()
    rng = random.Random(3)
    stream = miquel_candidates(rng, pts, table)
    done = 0
    while done < 500:
        cs, witness = next(stream)
        try:
            assert check_miquel(*cs, witness)
        except PrecondViolated:
            continue
        done += 1


def test_miquel_preconditions():
    cs = [Circle(0, 0, 1), Circle(10, 0, 1), Circle(20, 0, 1), Circle(30, 0, 1)]
    with pytest.raises(PrecondViolated):
        check_miquel(*cs, Circle(0, 0, 5))


def test_concyclic_negative():
    from pcarr.geometry import _QS
    q = _QS.rational
    square = [(q(0), q(0)), (q(1), q(0)), (q(1), q(1)), (q(0), q(1))]
    assert concyclic(square)
    assert not concyclic(square[:3] + [(q(0), q(2))])


def test_crossing_points_on_both_circles():
    from pcarr.geometry import _on_circle
    c1, c2 = Circle(0, 0, 5), Circle(3, 1, 4)
    for p in crossing_points(c1, c2):
        assert _on_circle(p, c1) and _on_circle(p, c2)
