import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_polytope, unit_simplex
from toricarith.lattice import DualVector, LatticeVector
from toricarith.polytopes import (
    LatticePolytope,
    LaurentPolynomial,
    mixed_volume_oracle,
    normal_fan,
)


def dv(*c):
    return DualVector(c)


def lv(*c):
    return LatticeVector(c)


def test_vertex_extraction():
    # interior and non-extreme boundary points are dropped
    K = LatticePolytope([dv(0, 0), dv(2, 0), dv(0, 2), dv(1, 0), dv(1, 1)])
    assert set(map(tuple, K.vertices)) == {(0, 0), (2, 0), (0, 2)}


def test_support_function():
    K = unit_simplex(2)
    assert K.support_function(lv(1, 0)) == 0
    assert K.support_function(lv(-1, 0)) == -1
    assert K.support_function(lv(-1, -1)) == -1
    assert K.support_function(lv(1, 1)) == 0


coord = st.integers(min_value=-4, max_value=4)
points2 = st.lists(
    st.tuples(coord, coord), min_size=3, max_size=7
)


@given(points2, st.tuples(coord, coord))
@settings(max_examples=60, deadline=None)
def test_support_function_minimum_over_points(pts, u):
    K = LatticePolytope([dv(*p) for p in pts])
    uu = lv(*u)
    vals = [sum(a * b for a, b in zip(p, u)) for p in pts]
    assert K.support_function(uu) == min(vals)


@given(points2, points2, st.tuples(coord, coord))
@settings(max_examples=60, deadline=None)
def test_support_function_additive_under_minkowski_sum(p1, p2, u):
    K1 = LatticePolytope([dv(*p) for p in p1])
    K2 = LatticePolytope([dv(*p) for p in p2])
    uu = lv(*u)
    assert (K1 + K2).support_function(uu) == K1.support_function(
        uu
    ) + K2.support_function(uu)


def test_dilation_and_negation():
    K = unit_simplex(2)
    assert (2 * K).volume() == 4 * K.volume()
    assert set(map(tuple, (-K).vertices)) == {(0, 0), (-1, 0), (0, -1)}


def test_contains_and_lattice_points():
    K = 2 * unit_simplex(2)
    pts = K.lattice_points()
    assert len(pts) == 6
    assert K.contains(dv(1, 1))
    assert not K.contains(dv(2, 1))


def test_volume_known():
    assert unit_simplex(2).volume() == Fraction(1, 2)
    assert unit_simplex(3).volume() == Fraction(1, 6)
    square = LatticePolytope([dv(0, 0), dv(1, 0), dv(0, 1), dv(1, 1)])
    assert square.volume() == 1


def test_volume_degenerate():
    assert LatticePolytope([dv(0, 0), dv(2, 2)]).volume() == 0


def test_edges_of_square():
    square = LatticePolytope([dv(0, 0), dv(1, 0), dv(0, 1), dv(1, 1)])
    assert len(square.edges()) == 4


def test_absolute_simplicity():
    square = LatticePolytope([dv(0, 0), dv(1, 0), dv(0, 1), dv(1, 1)])
    ok, _ = square.is_absolutely_simple()
    assert ok
    assert square.norm() == 2
    simplex = unit_simplex(2)
    ok, _ = simplex.is_absolutely_simple()
    assert ok
    assert simplex.norm() == 1
    # edge directions at the origin span an index-3 sublattice
    tri = LatticePolytope([dv(0, 0), dv(2, 1), dv(1, 2)])
    ok, _ = tri.is_absolutely_simple()
    assert not ok


def test_norm_segment():
    seg = LatticePolytope([DualVector([0]), DualVector([3])])
    ok, _ = seg.is_absolutely_simple()
    assert ok
    assert seg.norm() == 3


def test_normal_fan_p2():
    fan, coeffs = normal_fan(unit_simplex(2))
    assert {tuple(r) for r in fan.rays} == {(1, 0), (0, 1), (-1, -1)}
    assert fan.is_smooth() and fan.is_complete()
    by_ray = dict(zip(map(tuple, fan.rays), coeffs))
    assert by_ray == {(1, 0): 0, (0, 1): 0, (-1, -1): 1}


def test_normal_fan_square():
    square = LatticePolytope([dv(0, 0), dv(1, 0), dv(0, 1), dv(1, 1)])
    fan, coeffs = normal_fan(square)
    assert {tuple(r) for r in fan.rays} == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(fan.maximal) == 4


def test_normal_fan_rejects_degenerate():
    with pytest.raises(ValueError):
        normal_fan(LatticePolytope([dv(0, 0), dv(1, 1)]))


def test_normal_fan_3d_simplex():
    fan, _ = normal_fan(unit_simplex(3))
    assert len(fan.rays) == 4
    assert fan.is_smooth() and fan.is_complete()


def test_mixed_volume_oracle_known():
    seg_x = LatticePolytope([dv(0, 0), dv(1, 0)])
    seg_y = LatticePolytope([dv(0, 0), dv(0, 1)])
    assert mixed_volume_oracle([seg_x, seg_y]) == Fraction(1, 2)
    square = LatticePolytope([dv(0, 0), dv(1, 0), dv(0, 1), dv(1, 1)])
    assert mixed_volume_oracle([square, square]) == 1
    s2 = unit_simplex(2)
    assert mixed_volume_oracle([s2, s2]) == Fraction(1, 2)


def test_mixed_volume_oracle_symmetric():
    rng = random.Random(7)
    for _ in range(5):
        a = random_polytope(rng, 2)
        b = random_polytope(rng, 2)
        assert mixed_volume_oracle([a, b]) == mixed_volume_oracle([b, a])


def test_laurent_polynomial():
    p = LaurentPolynomial({dv(1, 0): 1, dv(0, 0): -2})
    q = LaurentPolynomial({dv(0, 1): 1, dv(0, 0): 1})
    prod = p * q
    assert prod.terms[dv(1, 1)] == 1
    assert prod.terms[dv(0, 0)] == -2
    assert abs(p((2.0, 5.0))) < 1e-12
    assert set(map(tuple, p.newton_polytope().vertices)) == {(1, 0), (0, 0)}
