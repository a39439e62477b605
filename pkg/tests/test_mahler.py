import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricarith.lattice import DualVector
from toricarith.mahler import (
    BLOCH_WIGNER_MAX,
    Place,
    bloch_wigner,
    canonical_height_point,
    dilog,
    height_place_data,
    mahler_best,
    mahler_linear_form,
    mahler_numeric,
    mahler_univariate_exact,
)
from toricarith.polytopes import LatticePolytope, LaurentPolynomial


def dv(*c):
    return DualVector(c)


# ----------------------------------------------------------------------
# places

def test_place_normalization():
    assert Place().abs(Fraction(-3, 2)) == Fraction(3, 2)
    assert Place(2).abs(Fraction(12)) == Fraction(1, 4)
    assert Place(3).abs(Fraction(2, 9)) == 9
    assert Place(5).abs(Fraction(7)) == 1


@given(
    st.fractions(
        min_value=Fraction(-100), max_value=Fraction(100), max_denominator=1000
    )
)
@settings(max_examples=60, deadline=None)
def test_product_formula(q):
    if q == 0:
        return
    total = math.log(float(Place().abs(q)))
    n, d = abs(q.numerator), q.denominator
    primes = set()
    for x in (n, d):
        y, p = x, 2
        while p * p <= y:
            if y % p == 0:
                primes.add(p)
                while y % p == 0:
                    y //= p
            p += 1
        if y > 1:
            primes.add(y)
    for p in primes:
        total += math.log(float(Place(p).abs(q)))
    assert abs(total) < 1e-9


# ----------------------------------------------------------------------
# dilogarithm

def test_dilog_special_values():
    assert abs(dilog(1) - math.pi**2 / 6) < 1e-14
    assert abs(dilog(-1) + math.pi**2 / 12) < 1e-14
    assert abs(dilog(0.5) - (math.pi**2 / 12 - math.log(2) ** 2 / 2)) < 1e-14


def test_bloch_wigner_catalan():
    catalan = 0.915965594177219015054603514932384110774
    assert abs(bloch_wigner(1j) - catalan) < 1e-12


def test_bloch_wigner_max_at_sixth_root():
    z = cmath.exp(1j * math.pi / 3)
    assert abs(bloch_wigner(z) - BLOCH_WIGNER_MAX) < 1e-12


def test_bloch_wigner_functional_equations():
    rng = random.Random(1)
    for _ in range(25):
        z = complex(rng.uniform(-2, 2), rng.uniform(0.1, 2))
        assert abs(bloch_wigner(z.conjugate()) + bloch_wigner(z)) < 1e-10
        assert abs(bloch_wigner(1 / z) + bloch_wigner(z)) < 1e-10
        assert abs(bloch_wigner(1 - z) + bloch_wigner(z)) < 1e-10


def test_bloch_wigner_real_axis_and_poles():
    assert bloch_wigner(0.3) == 0.0
    assert bloch_wigner(-2.0) == 0.0
    with pytest.raises(ValueError):
        bloch_wigner(0)
    with pytest.raises(ValueError):
        bloch_wigner(1)


# ----------------------------------------------------------------------
# Mahler measures

def test_mahler_monomial():
    p = LaurentPolynomial({dv(3, -2): Fraction(5)})
    assert mahler_numeric(p).value == pytest.approx(math.log(5), abs=1e-12)


def test_mahler_univariate_jensen():
    # M(x - 2) = log 2; M(2x - 1) = log 2; M(x - 1) = 0
    p = LaurentPolynomial({dv(1): 1, dv(0): -2})
    assert mahler_univariate_exact(p) == pytest.approx(math.log(2), abs=1e-12)
    q = LaurentPolynomial({dv(1): 2, dv(0): -1})
    assert mahler_univariate_exact(q) == pytest.approx(math.log(2), abs=1e-12)
    r = LaurentPolynomial({dv(1): 1, dv(0): -1})
    assert mahler_univariate_exact(r) == pytest.approx(0.0, abs=1e-12)


def test_mahler_numeric_vs_jensen():
    rng = random.Random(5)
    for _ in range(10):
        coeffs = {
            dv(k): rng.randrange(-5, 6)
            for k in range(rng.randrange(2, 5))
        }
        if all(c == 0 for c in coeffs.values()):
            continue
        p = LaurentPolynomial({e: c for e, c in coeffs.items() if c != 0})
        if len(p.terms) < 2:
            continue
        est = mahler_numeric(p, tol=1e-7)
        assert est.value == pytest.approx(mahler_univariate_exact(p), abs=1e-4)


def test_mahler_linear_form_degenerate():
    # one modulus dominating the sum of the others
    assert mahler_linear_form([5, 1, 2]) == pytest.approx(math.log(5), abs=1e-14)
    assert mahler_linear_form([3, 1]) == pytest.approx(math.log(3), abs=1e-14)


def test_mahler_linear_form_equilateral():
    val = mahler_linear_form([1, 1, 1])
    z = cmath.exp(1j * math.pi / 3)
    assert val == pytest.approx(bloch_wigner(z) / math.pi, abs=1e-12)


def test_mahler_best_dispatch():
    # closed form and quadrature agree on 1 + x + y
    p = LaurentPolynomial({dv(0, 0): 1, dv(1, 0): 1, dv(0, 1): 1})
    closed = mahler_best(p)
    numeric = mahler_numeric(p, tol=1e-6).value
    assert closed == pytest.approx(numeric, abs=1e-3)


def test_mahler_zero_rejected():
    with pytest.raises(ValueError):
        mahler_numeric(LaurentPolynomial({}))


# ----------------------------------------------------------------------
# heights

def test_height_of_two_on_segment():
    K = LatticePolytope([dv(0), dv(1)])
    assert canonical_height_point(K, (2,)) == pytest.approx(math.log(2), abs=1e-14)
    assert canonical_height_point(K, (Fraction(1, 2),)) == pytest.approx(
        math.log(2), abs=1e-14
    )
    assert canonical_height_point(K, (1,)) == 0.0


def test_height_place_data_square():
    square = LatticePolytope([dv(0, 0), dv(1, 0), dv(0, 1), dv(1, 1)])
    arch, pexp = height_place_data(square, (2, 3))
    assert arch == 6
    assert pexp == {2: 0, 3: 0}
    arch, pexp = height_place_data(square, (Fraction(1, 2), 3))
    assert arch == 3
    assert pexp[2] == 1


def test_height_additive_in_polytope():
    seg_x = LatticePolytope([dv(0, 0), dv(1, 0)])
    seg_y = LatticePolytope([dv(0, 0), dv(0, 1)])
    both = seg_x + seg_y
    x = (Fraction(2, 3), Fraction(5))
    h = canonical_height_point
    assert h(both, x) == pytest.approx(h(seg_x, x) + h(seg_y, x), abs=1e-12)


def test_height_rejects_zero_coordinate():
    K = LatticePolytope([dv(0), dv(1)])
    with pytest.raises(ValueError):
        canonical_height_point(K, (0,))
