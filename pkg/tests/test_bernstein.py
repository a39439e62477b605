import math
import random
from fractions import Fraction

import pytest

from conftest import unit_simplex
from toricarith.bernstein import (
    NoApplicableBoundError,
    bk_bound,
    bk_verify,
    bkk_count,
    bound_L,
    estimate_L_lower,
    lelong_constants,
    lelong_tail_truncated,
)
from toricarith.lattice import DualVector
from toricarith.polytopes import LatticePolytope, LaurentPolynomial


def dv(*c):
    return DualVector(c)


def test_lelong_head_values():
    assert lelong_constants(1).head == 0
    assert lelong_constants(2).head == Fraction(1, 2)
    assert lelong_constants(3).head == Fraction(3, 4)


def test_lelong_prime_closed_forms():
    assert abs(lelong_constants(1).c_prime - math.log(2)) < 1e-15
    assert abs(
        lelong_constants(2).c_prime - (1.5 + math.log(2) - Fraction(5, 8))
    ) < 1e-15


def test_lelong_tail_matches_truncation():
    # the closed form equals the tail series summed far enough
    for n in (1, 2, 3):
        c = lelong_constants(n)
        tail_closed = c.value_prime - float(c.head_prime)
        assert abs(tail_closed - lelong_tail_truncated(n, 200)) < 1e-15


def test_lelong_invalid_dimension():
    with pytest.raises(ValueError):
        lelong_constants(0)


def test_bound_L_segment():
    seg = LatticePolytope([dv(0), dv(1)])
    assert bound_L(seg) == pytest.approx(math.log(2), abs=1e-15)
    # scaling the segment scales the norm
    seg3 = LatticePolytope([dv(0), dv(3)])
    assert bound_L(seg3) == pytest.approx(3 * math.log(2), abs=1e-14)


def test_bound_L_lower_dimensional_polytope():
    # a segment embedded in the plane reduces to dimension 1
    seg = LatticePolytope([dv(0, 0), dv(2, 1)])
    assert bound_L(seg) == pytest.approx(math.log(2), abs=1e-15)


def test_bound_L_requires_absolute_simplicity():
    tri = LatticePolytope([dv(0, 0), dv(2, 1), dv(1, 2)])
    with pytest.raises(NoApplicableBoundError):
        bound_L(tri)


def test_estimate_below_bound_simplex():
    s = unit_simplex(2)
    est = estimate_L_lower(s, sections=4, points=64, seed=1)
    assert est <= bound_L(s) + 1e-6


def test_bk_bound_report_fields():
    px = LaurentPolynomial({dv(1, 0): 1, dv(0, 0): -2})
    py = LaurentPolynomial({dv(0, 1): 1, dv(0, 0): -3})
    rep = bk_bound([px, py])
    assert rep.dimension == 2
    assert rep.mixed_volumes == [Fraction(1, 2), Fraction(1, 2)]
    assert rep.rhs > 0
    assert "RHS" in rep.summary()


def test_bk_verify_binomial_system():
    px = LaurentPolynomial({dv(1, 0): 1, dv(0, 0): -2})
    py = LaurentPolynomial({dv(0, 1): 1, dv(0, 0): -3})
    rep = bk_verify([px, py], [((2, 3), 1)])
    assert rep.holds
    assert rep.lhs == pytest.approx(0.5 * (math.log(2) + math.log(3)), abs=1e-12)
    assert rep.slack >= 0


def test_bk_rejects_fractional_coefficients():
    p = LaurentPolynomial({dv(1): Fraction(1, 2), dv(0): 1})
    with pytest.raises(ValueError):
        bk_bound([p])


def test_bk_rejects_wrong_count():
    p = LaurentPolynomial({dv(1, 0): 1, dv(0, 0): 1})
    with pytest.raises(ValueError):
        bk_bound([p])


def test_bkk_count_known():
    px = LaurentPolynomial({dv(1, 0): 1, dv(0, 0): -2})
    py = LaurentPolynomial({dv(0, 1): 1, dv(0, 0): -3})
    assert bkk_count([px, py]) == 1
    # two generic conics: 4 solutions
    conic = LaurentPolynomial(
        {dv(2, 0): 1, dv(0, 2): 1, dv(1, 1): 1, dv(1, 0): 1, dv(0, 1): 1, dv(0, 0): 1}
    )
    conic2 = LaurentPolynomial(
        {dv(2, 0): 2, dv(0, 2): -1, dv(1, 0): 3, dv(0, 0): 1}
    )
    assert bkk_count([conic, conic2]) == 4
