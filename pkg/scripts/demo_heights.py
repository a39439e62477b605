#!/usr/bin/env python3
"""Mahler measures, dilogarithm values, and canonical heights.

Prints the trilinear-form Mahler measure against its dilogarithm closed
form, a few heights of rational torus points, and the root-height
inequality report for a small system.
"""

import cmath
import math
from fractions import Fraction

from toricarith.bernstein import bk_verify, bound_L, lelong_constants
from toricarith.lattice import DualVector
from toricarith.mahler import (
    bloch_wigner,
    canonical_height_point,
    mahler_numeric,
)
from toricarith.polytopes import LatticePolytope, LaurentPolynomial


def main():
    p = LaurentPolynomial(
        {DualVector([0, 0]): 1, DualVector([1, 0]): 1, DualVector([0, 1]): 1}
    )
    est = mahler_numeric(p, tol=1e-8)
    closed = bloch_wigner(cmath.exp(1j * math.pi / 3)) / math.pi
    print(f"m(1+x+y) quadrature  = {est.value:.10f} (grid {est.grid})")
    print(f"m(1+x+y) closed form = {closed:.10f}")

    seg = LatticePolytope([DualVector([0]), DualVector([1])])
    square = LatticePolytope(
        [DualVector([0, 0]), DualVector([1, 0]), DualVector([0, 1]), DualVector([1, 1])]
    )
    print(f"\nh_[0,1](2)        = {canonical_height_point(seg, (2,)):.10f}")
    print(f"h_[0,1](1/2)      = {canonical_height_point(seg, (Fraction(1, 2),)):.10f}")
    print(f"h_square(2, 3)    = {canonical_height_point(square, (2, 3)):.10f}")
    print(f"h_square(1, 1)    = {canonical_height_point(square, (1, 1)):.10f}")

    c1, c2 = lelong_constants(1), lelong_constants(2)
    print(f"\nC_1' = {c1.c_prime:.12f} (log 2 = {math.log(2):.12f})")
    print(f"C_2' = {c2.c_prime:.12f}")
    print(f"L-bound for [0,1]: {bound_L(seg):.12f}")

    px = LaurentPolynomial({DualVector([1, 0]): 1, DualVector([0, 0]): -2})
    py = LaurentPolynomial({DualVector([0, 1]): 1, DualVector([0, 0]): -3})
    rep = bk_verify([px, py], [((2, 3), 1)])
    print("\nroot-height inequality for (x-2, y-3):")
    print(rep.summary())


if __name__ == "__main__":
    main()
