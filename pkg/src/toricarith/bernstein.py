"""Effective constants and the arithmetic Bernstein-Kushnirenko bound.

The sup-norm/Mahler gap of sections of the canonical metric is bounded
through the polytope norm of an absolutely simple polytope; the final
inequality compares the canonical heights of the isolated common roots
of a Laurent system with a mixed-volume/Mahler right-hand side.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import geometry
from .lattice import DualVector
from .mahler import canonical_height_point, mahler_numeric
from .polytopes import LatticePolytope, LaurentPolynomial


class NoApplicableBoundError(ValueError):
    pass


@dataclass(frozen=True)
class LelongConstants:
    n: int
    head: Fraction  # C_n, exact
    head_prime: Fraction  # rational part of C_n'
    value_prime: float  # C_n' including the tail

    @property
    def c(self) -> float:
        return float(self.head)

    @property
    def c_prime(self) -> float:
        return self.value_prime


def lelong_constants(n: int) -> LelongConstants:
    """C_n = (1/2) H_{n-1}; C_n' = H_{2n-2} + tail sum of 1/(i 2^i).

    The tail from i = 2n-1 equals log 2 minus the partial geometric-log
    sum, which evaluates it in closed form (the full series is log 2).
    """
    if n < 1:
        raise ValueError("dimension must be a positive integer")
    head = Fraction(1, 2) * sum((Fraction(1, i) for i in range(1, n)), Fraction(0))
    hp = sum((Fraction(1, i) for i in range(1, 2 * n - 1)), Fraction(0))
    partial = sum(
        (Fraction(1, i * 2**i) for i in range(1, 2 * n - 1)), Fraction(0)
    )
    value = float(hp - partial) + math.log(2.0)
    return LelongConstants(n, head, hp, value)


def lelong_tail_truncated(n: int, terms: int) -> float:
    """Direct truncated evaluation of the C_n' tail (for cross-checking)."""
    start = 2 * n - 1
    return sum(1.0 / (i * 2.0**i) for i in range(start, start + terms))


def reduce_polytope(K: LatticePolytope):
    """Full-dimensional copy of K inside the saturated lattice of its span.

    Returns (reduced polytope, reduced dimension).
    """
    coords = [v.coords for v in K.vertices]
    red, _, _ = geometry.reduce_to_affine_lattice(coords)
    rdim = len(red[0]) if red and red[0] else 0
    if rdim == 0:
        return None, 0
    return LatticePolytope(red), rdim


def bound_L(K: LatticePolytope) -> float:
    """(C_d + C_d') N(K) for an absolutely simple polytope, d the
    dimension of its span."""
    red, rdim = reduce_polytope(K)
    if rdim == 0:
        return 0.0
    ok, _ = red.is_absolutely_simple()
    if not ok:
        raise NoApplicableBoundError("polytope is not absolutely simple")
    consts = lelong_constants(rdim)
    return (consts.c + consts.c_prime) * red.norm()


def estimate_L_lower(
    K: LatticePolytope,
    sections: int = 12,
    points: int = 256,
    tol: float = 1e-4,
    seed: int = 0,
) -> float:
    """Empirical lower estimate of the sup-norm/Mahler gap.

    Samples random plus/minus-one sections supported on the lattice points
    of K and random torus points; each sample gives a certified lower
    bound up to the Mahler quadrature error.
    """
    rng = random.Random(seed)
    lp = K.lattice_points()
    d = K.ambient_dim
    verts = K.vertices
    best = 0.0
    for _ in range(sections):
        coeffs = {m: rng.choice((-1, 1)) for m in lp}
        s = LaurentPolynomial(coeffs)
        m_est = mahler_numeric(s, tol=tol).value
        sup = -math.inf
        for xi in _sample_points(rng, d, points):
            logmod = [math.log(abs(x)) for x in xi]
            num = math.log(max(abs(s(xi)), 1e-300))
            den = max(sum(l * mi for l, mi in zip(logmod, m)) for m in verts)
            sup = max(sup, num - den)
        best = max(best, sup - m_est)
    return best


def _sample_points(rng, d, count):
    # mix of unit-torus points and points with spread moduli; includes the
    # real points with +-1 coordinates where sups are often attained
    from itertools import product as iproduct

    if d <= 4:
        for signs in iproduct((1.0, -1.0), repeat=d):
            yield tuple(signs)
    for _ in range(count):
        pt = []
        for _ in range(d):
            r = math.exp(rng.uniform(-2.0, 2.0)) if rng.random() < 0.5 else 1.0
            phi = rng.uniform(0.0, 2.0 * math.pi)
            pt.append(r * complex(math.cos(phi), math.sin(phi)))
        yield tuple(pt)


# ----------------------------------------------------------------------
# the Bernstein-Kushnirenko report


@dataclass
class BKReport:
    dimension: int
    mixed_volumes: list  # V(sum, ..., hat i, ...) as Fractions
    mahler: list  # M(P_i) numeric values
    l_bounds: list  # L-bound used per polynomial
    rhs: float
    lhs: float | None = None
    slack: float | None = None
    holds: bool | None = None
    root_heights: list = field(default_factory=list)

    def summary(self):
        lines = [f"d = {self.dimension}"]
        for i, (v, m, l) in enumerate(
            zip(self.mixed_volumes, self.mahler, self.l_bounds)
        ):
            lines.append(f"  i={i}: V={v}  M={m:.6f}  L<={l:.6f}")
        lines.append(f"  RHS = {self.rhs:.6f}")
        if self.lhs is not None:
            lines.append(
                f"  LHS = {self.lhs:.6f}  slack = {self.slack:.6f}  "
                f"holds = {self.holds}"
            )
        return "\n".join(lines)


def _check_integer_coeffs(polys):
    for p in polys:
        for c in p.terms.values():
            if Fraction(c).denominator != 1:
                raise ValueError("the height bound needs integer coefficients")


def newton_data(polys):
    navs = [p.newton_polytope() for p in polys]
    total = navs[0]
    for K in navs[1:]:
        total = total + K
    return navs, total


def _l_value(K_i: LatticePolytope, total: LatticePolytope) -> float:
    red, rdim = reduce_polytope(K_i)
    if rdim == 0:
        return 0.0
    try:
        return bound_L(K_i)
    except NoApplicableBoundError:
        pass
    # monotonicity: L(K_i) <= L(total) when K_i is a Minkowski summand
    try:
        return bound_L(total)
    except NoApplicableBoundError:
        raise NoApplicableBoundError(
            "neither the Newton polytope nor the total polytope is "
            "absolutely simple; no effective L-bound applies"
        )


def bk_bound(polys, tol: float = 1e-6) -> BKReport:
    """Right-hand side of the arithmetic root-height bound:
    sum over i of V(total, ..., hat i, ...) (M(P_i) + L_i)."""
    from .intersection import degree
    from .divisors import divisor_of_polytope
    from .polytopes import normal_fan

    polys = list(polys)
    d = polys[0].ambient_dim
    if len(polys) != d:
        raise ValueError("need d polynomials in d variables")
    _check_integer_coeffs(polys)
    navs, total = newton_data(polys)
    if not total.is_full_dimensional():
        raise ValueError("total Newton polytope is lower-dimensional")
    fan, _ = normal_fan(total)
    fan = fan.regularize()
    div_total = divisor_of_polytope(fan, total)
    divs = [divisor_of_polytope(fan, K) for K in navs]
    fact = 1
    for i in range(2, d + 1):
        fact *= i
    vols = []
    for i in range(d):
        tup = [div_total] + [divs[j] for j in range(d) if j != i]
        vols.append(Fraction(degree(fan, tup), fact))
    mvals = []
    for p in polys:
        from .mahler import mahler_best

        mvals.append(mahler_best(p, tol))
    lvals = [_l_value(navs[i], total) for i in range(d)]
    rhs = sum(float(v) * (m + l) for v, m, l in zip(vols, mvals, lvals))
    return BKReport(d, vols, mvals, lvals, rhs)


def bk_verify(polys, roots, tol: float = 1e-6) -> BKReport:
    """Left-hand side from user-supplied isolated roots with multiplicity:
    (1/d!) sum of l(x) h(x); compares against the bound."""
    report = bk_bound(polys, tol)
    _, total = newton_data(polys)
    d = report.dimension
    fact = 1
    for i in range(2, d + 1):
        fact *= i
    lhs = 0.0
    heights = []
    for x, mult in roots:
        h = canonical_height_point(total, x)
        heights.append(h)
        lhs += int(mult) * h
    lhs /= fact
    report.lhs = lhs
    report.root_heights = heights
    report.slack = report.rhs - lhs
    report.holds = report.slack >= -1e-9
    return report


def bkk_count(polys) -> int:
    """Classical Bernstein number d! V(N(P_1), ..., N(P_d))."""
    from .intersection import mixed_volume

    polys = list(polys)
    d = polys[0].ambient_dim
    if len(polys) != d:
        raise ValueError("need d polynomials in d variables")
    navs, total = newton_data(polys)
    if not total.is_full_dimensional():
        return 0
    fact = 1
    for i in range(2, d + 1):
        fact *= i
    v = mixed_volume(navs)
    count = v * fact
    if count.denominator != 1:
        raise ArithmeticError("Bernstein number must be an integer")
    return int(count)
