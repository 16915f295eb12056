from fractions import Fraction

from hypothesis import given, settings, strategies as st

from aomoto import qq
from aomoto.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, cone_implicit_equalities, maximize, strict_interior_point


def test_simple_optimum():
    res = maximize([1, 1], [[1, 0], [0, 1], [1, 1]], [2, 3, 4])
    assert res.status == OPTIMAL and res.value == 4


def test_infeasible_and_unbounded():
    assert maximize([1], [[1], [-1]], [0, -1]).status == INFEASIBLE
    assert maximize([1], [[-1]], [0]).status == UNBOUNDED


def test_equality_constraints():
    res = maximize([1, 0], [[1, 0]], [10], [[1, -1]], [Fraction(1, 2)])
    assert res.status == OPTIMAL and res.x == (10, Fraction(19, 2))


def test_strict_interior_point_of_triangle():
    G = [[1, 0], [0, 1], [-1, -1]]
    h = [0, 0, -1]
    p = strict_interior_point(G, h)
    assert all(qq.dot(g, p) > b for g, b in zip(G, h))
    # a segment has no strict interior in the plane
    assert strict_interior_point([[1, 0], [-1, 0]], [0, 0]) is None


def test_cone_implicit_equalities_of_half_line():
    # x >= 0, -x >= 0, y >= 0 : x is implicitly zero
    implicit, r = cone_implicit_equalities([[1, 0], [-1, 0], [0, 1]])
    assert implicit == {0, 1}
    assert r[0] == 0 and r[1] > 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-4, 4)), min_size=1, max_size=6))
def test_interior_point_agrees_with_grid_search(rows):
    G = [[a, b] for a, b, _ in rows]
    h = [c for _, _, c in rows]
    p = strict_interior_point(G, h)
    if p is not None:
        assert all(qq.dot(g, p) > c for g, c in zip(G, h))
    else:
        # no point of a fine grid can be strictly feasible
        for i in range(-40, 41):
            for j in range(-40, 41):
                x = (Fraction(i, 4), Fraction(j, 4))
                assert not all(qq.dot(g, x) > c for g, c in zip(G, h))
