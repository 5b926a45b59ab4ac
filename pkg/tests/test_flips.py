import pytest
from hypothesis import given, settings, strategies as st

from pcarr.enumerate import _seed, enumerate_class
from pcarr.flips import (BudgetExceeded, collapse_digon, digon_flips, flip_graph, flip_neighbours,
                         flip_triangle, flipped_face, induced_graph, triangle_flips)
from pcarr.maps import from_code, krupp, nonkrupp, two_circles

from oracles import euler_ok

CONNECTED5 = enumerate_class(5, "connected")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(CONNECTED5) - 1))
def test_triangle_flip_is_involution(i):
    arr = from_code(CONNECTED5[i])
    for face, res in triangle_flips(arr):
        assert res.v == arr.v and euler_ok(res)
        back = flip_triangle(res, flipped_face(arr, face))
        assert back.code == arr.code


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(CONNECTED5) - 1))
def test_digon_moves_change_vertex_count(i):
    arr = from_code(CONNECTED5[i])
    moves = digon_flips(arr)
    for _, res in moves.collapses:
        assert res.v == arr.v - 2 and euler_ok(res)
    for _, res in moves.creations:
        assert res.v == arr.v + 2 and euler_ok(res)


def test_krupp_flips_to_nonkrupp():
    assert {res.code for _, res in triangle_flips(krupp())} == {nonkrupp().code}


def test_triangle_flip_needs_triangle():
    arr = two_circles()
    with pytest.raises(ValueError):
        flip_triangle(arr, 0)


def test_collapse_that_disconnects_is_rejected():
    arr = two_circles()
    assert collapse_digon(arr, 0) is None
    assert digon_flips(arr).rejected["collapse-disconnects"] == 4


def test_flip_graph_n3_connected():
    g = flip_graph([krupp()], "td", "connected")
    assert len(g) == 3 and g.is_connected()


def test_flip_graph_digonfree_n5():
    g = flip_graph([_seed(5)], "t", "intersecting-digonfree")
    assert len(g) == 14 and g.is_connected()


def test_flip_graph_seed_independent():
    a = flip_graph([_seed(5)], "t", "intersecting")
    other = a.arrangement(len(a) - 1)
    b = flip_graph([other], "t", "intersecting")
    assert set(a.keys) == set(b.keys) and len(a) == 278


def test_flip_graph_caps():
    with pytest.raises(BudgetExceeded) as exc:
        flip_graph([_seed(5)], "t", "intersecting", max_nodes=10)
    assert len(exc.value.partial) == 10


def test_flip_graph_rejects_bad_seed():
    with pytest.raises(ValueError):
        flip_graph([nonkrupp()], "t", "intersecting-digonfree")


def test_induced_graph_matches_closure():
    g = flip_graph([_seed(4)], "td", "connected")
    h = induced_graph(g.keys)
    assert len(h) == len(g) and h.is_connected()
    assert sum(1 for _ in h.edges()) == sum(1 for _ in g.edges())
    for k in g.keys:
        assert flip_neighbours(k, "td") <= set(g.keys)
