#!/usr/bin/env python3
"""Walk through the projective-plane pipeline end to end.

Builds the normal fan of the unit simplex, prints the Cartier data of
the hyperplane divisor, intersection numbers, section bases, and the
canonical metric at a few torus points.
"""

from fractions import Fraction

from toricarith.divisors import (
    TDivisor,
    canonical_metric_norm,
    cartier_data,
    polytope_of_divisor,
    section_basis,
)
from toricarith.intersection import degree, jd_presentation
from toricarith.lattice import DualVector
from toricarith.polytopes import LatticePolytope, LaurentPolynomial, normal_fan


def main():
    simplex = LatticePolytope(
        [DualVector([0, 0]), DualVector([1, 0]), DualVector([0, 1])]
    )
    fan, coeffs = normal_fan(simplex)
    print("rays:", [tuple(r) for r in fan.rays])
    print("maximal cones:", sorted(sorted(c) for c in fan.maximal))
    print("smooth:", fan.is_smooth(), " complete:", fan.is_complete())

    D = TDivisor(fan, coeffs)
    print("\nhyperplane divisor coefficients:", list(D.coefficients))
    for key, m in sorted(cartier_data(D).items(), key=lambda kv: sorted(kv[0])):
        print(f"  cone {sorted(key)}: m = {tuple(m)}")

    print("\ndeg D^2 =", degree(fan, [D, D]))
    print("deg (2D)(3D) =", degree(fan, [2 * D, 3 * D]))

    print("\nsections of D:", [tuple(m) for m in section_basis(D)])
    print("sections of 2D:", [tuple(m) for m in section_basis(2 * D)])

    s = LaurentPolynomial({DualVector([0, 0]): 1})
    for x in [(1.0, 1.0), (2.0, 3.0), (0.5, 0.25)]:
        print(f"||1||_can{x} = {canonical_metric_norm(D, s, x):.6f}")

    pres = jd_presentation(fan)
    print("\ncohomology presentation:")
    print("  variables:", pres["variables"])
    print("  non-face monomials:", pres["nonface_monomials"])
    print("  linear forms:", pres["linear_forms"])


if __name__ == "__main__":
    main()
