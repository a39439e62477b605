import random
from fractions import Fraction

import pytest

from conftest import random_polytope, unit_simplex
from toricarith.divisors import TDivisor, divisor_of_polytope, principal_divisor
from toricarith.intersection import (
    MinkowskiWeight,
    UnbalancedWeightError,
    check_balanced,
    degree,
    elementary_divisor,
    fundamental_weight,
    intersect_divisor,
    jd_presentation,
    mixed_volume,
    nonface_product_vanishes,
)
from toricarith.lattice import DualVector
from toricarith.polytopes import LatticePolytope, mixed_volume_oracle


def dv(*c):
    return DualVector(c)


def test_fundamental_weight_balanced(p2_fan):
    w = fundamental_weight(p2_fan)
    assert check_balanced(w)
    assert all(v == 1 for v in w.values.values())


def test_degree_p2(p2_fan):
    H = TDivisor(p2_fan, [0, 0, 1])
    assert degree(p2_fan, [H, H]) == 1
    assert degree(p2_fan, [2 * H, 3 * H]) == 6


def test_degree_p1xp1(p1xp1_fan):
    # rays e1, -e1, e2, -e2; the two rulings
    A = TDivisor(p1xp1_fan, [1, 0, 0, 0])
    B = TDivisor(p1xp1_fan, [0, 0, 1, 0])
    assert degree(p1xp1_fan, [A, B]) == 1
    assert degree(p1xp1_fan, [A, A]) == 0
    assert degree(p1xp1_fan, [B, B]) == 0


def test_degree_p3(p3_fan):
    H = TDivisor(p3_fan, [0, 0, 0, 1])
    assert degree(p3_fan, [H, H, H]) == 1


def test_principal_divisor_degree_zero(p2_fan):
    H = TDivisor(p2_fan, [0, 0, 1])
    P = principal_divisor(p2_fan, dv(1, -2))
    assert degree(p2_fan, [P, H]) == 0


def test_intersection_step_balanced(p2_fan):
    w = fundamental_weight(p2_fan)
    H = TDivisor(p2_fan, [0, 0, 1])
    w1 = intersect_divisor(w, H)
    assert check_balanced(w1)
    assert w1.codim == 1


def test_unbalanced_weight_rejected(p2_fan):
    # an arbitrary non-balanced assignment on the rays
    keys = sorted(p2_fan.cones_of_dim(1), key=sorted)
    w = MinkowskiWeight(p2_fan, 1, {keys[0]: 1})
    assert not check_balanced(w)
    H = TDivisor(p2_fan, [0, 0, 1])
    with pytest.raises(UnbalancedWeightError):
        intersect_divisor(w, H)


def test_choice_independence(p2_fan, p1xp1_fan):
    for fan, coeffs in (
        (p2_fan, [0, 0, 1]),
        (p1xp1_fan, [1, 0, 2, 0]),
    ):
        D = TDivisor(fan, coeffs)
        w = fundamental_weight(fan)
        baseline = intersect_divisor(w, D)
        for seed in range(10):
            rng = random.Random(seed)
            assert intersect_divisor(w, D, rng=rng).values == baseline.values


def test_nonface_vanishing(p1xp1_fan):
    # e1 and -e1 span no cone
    assert nonface_product_vanishes(p1xp1_fan, [0, 1])
    assert not nonface_product_vanishes(p1xp1_fan, [0, 2])


def test_mixed_volume_matches_oracle_known():
    seg_x = LatticePolytope([dv(0, 0), dv(1, 0)])
    seg_y = LatticePolytope([dv(0, 0), dv(0, 1)])
    assert mixed_volume([seg_x, seg_y]) == Fraction(1, 2)
    s2 = unit_simplex(2)
    assert mixed_volume([s2, s2]) == Fraction(1, 2)
    square = LatticePolytope([dv(0, 0), dv(1, 0), dv(0, 1), dv(1, 1)])
    assert mixed_volume([square, square]) == 1


def test_mixed_volume_random_vs_oracle():
    rng = random.Random(11)
    for _ in range(10):
        polys = [random_polytope(rng, 2) for _ in range(2)]
        assert mixed_volume(polys) == mixed_volume_oracle(polys)


def test_jd_presentation_p2(p2_fan):
    pres = jd_presentation(p2_fan)
    assert pres["variables"] == ["t0", "t1", "t2"]
    assert pres["nonface_monomials"] == [(0, 1, 2)]
    assert len(pres["linear_forms"]) == 2


def test_jd_presentation_p1xp1(p1xp1_fan):
    pres = jd_presentation(p1xp1_fan)
    assert sorted(pres["nonface_monomials"]) == [(0, 1), (2, 3)]
