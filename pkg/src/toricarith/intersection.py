"""Intersection numbers via integer Minkowski weights.

Products of canonically-metrized Chern classes are encoded as balanced
integer weights on the cones of a fixed codimension.  One intersection
step takes a weight on dimension-k cones to dimension-(k-1) cones by

    w(sigma) = sum over k-cones tau > sigma of
               c(tau) * <m_ref(sigma) - m_ref(tau), v(tau/sigma)>

where m_ref(.) is any Cartier linear part valid on the cone and
v(tau/sigma) is any lattice point of tau lifting the primitive generator
of the quotient ray.  Balancedness of the input makes the result
independent of every choice; the evaluation form avoids materializing
orientation signs, and the global sign is pinned by deg O(1)^2 = 1 on
the projective plane.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cones import Fan
from .divisors import TDivisor, cartier_data, divisor_of_polytope
from .lattice import DualVector, LatticeVector, in_sublattice, pairing
from .polytopes import LatticePolytope, normal_fan


class UnbalancedWeightError(ValueError):
    pass


class MinkowskiWeight:
    """Integer weight on all cones of one dimension of a fan."""

    def __init__(self, fan: Fan, codim: int, values):
        self.fan = fan
        self.codim = codim
        k = fan.dim - codim
        vals = {}
        for key in fan.cones_of_dim(k):
            vals[key] = int(values.get(key, 0)) if hasattr(values, "get") else 0
        if hasattr(values, "items"):
            for key, v in values.items():
                key = frozenset(key)
                if len(key) != k or key not in self.fan.cones:
                    raise ValueError(f"{sorted(key)} is not a dimension-{k} cone")
                vals[key] = int(v)
        self.values = vals

    @property
    def cone_dim(self):
        return self.fan.dim - self.codim

    def is_zero(self):
        return all(v == 0 for v in self.values.values())

    def __eq__(self, other):
        return (
            isinstance(other, MinkowskiWeight)
            and self.fan is other.fan
            and self.codim == other.codim
            and self.values == other.values
        )

    def __repr__(self):
        items = {tuple(sorted(k)): v for k, v in self.values.items() if v}
        return f"MinkowskiWeight(codim={self.codim}, {items})"


def fundamental_weight(fan: Fan) -> MinkowskiWeight:
    """Weight 1 on every maximal cone (the fundamental class)."""
    if not (fan.is_smooth() and fan.is_complete()):
        raise ValueError("fundamental weight requires a smooth complete fan")
    return MinkowskiWeight(fan, 0, {key: 1 for key in fan.maximal})


def _quotient_lift(fan, sigma, tau, rng=None):
    """Lattice point of tau mapping to the primitive generator of the ray
    tau/sigma in N/N_sigma.  On a smooth fan the extra ray itself works;
    an optional rng adds a random nonnegative N_sigma offset (the result
    of the intersection step must not depend on it)."""
    extra = next(iter(tau - sigma))
    v = fan.rays[extra]
    if rng is not None:
        for i in sigma:
            v = v + rng.randrange(0, 3) * fan.rays[i]
    return v


def _ref_cone(fan, sigma, rng=None):
    """A maximal cone containing sigma (deterministic, or random)."""
    if rng is None:
        memo = getattr(fan, "_ref_memo", None)
        if memo is None:
            memo = {}
            object.__setattr__(fan, "_ref_memo", memo)
        if sigma in memo:
            return memo[sigma]
    sup = [key for key in fan.maximal if sigma <= key]
    if not sup:
        raise ValueError("cone not contained in a maximal cone")
    if rng is not None:
        return rng.choice(sup)
    best = min(sup, key=lambda k: tuple(sorted(k)))
    memo[sigma] = best
    return best


def intersect_divisor(
    weight: MinkowskiWeight, divisor: TDivisor, rng=None, check=True
) -> MinkowskiWeight:
    """One step of the product recursion: codim q -> codim q+1."""
    fan = weight.fan
    if divisor.fan is not fan:
        raise ValueError("weight and divisor live on different fans")
    if weight.cone_dim == 0:
        raise ValueError("weight already has point codimension")
    if check and not check_balanced(weight):
        raise UnbalancedWeightError("input weight is not balanced")
    data = cartier_data(divisor)
    k = weight.cone_dim
    covers = _cover_map(fan, k)
    out = {}
    for sigma in fan.cones_of_dim(k - 1):
        m_sigma = data[_ref_cone(fan, sigma, rng)]
        total = 0
        for tau in covers.get(sigma, ()):
            c = weight.values[tau]
            if c == 0:
                continue
            m_tau = data[_ref_cone(fan, tau, rng)]
            v = _quotient_lift(fan, sigma, tau, rng)
            total += c * pairing(m_sigma - m_tau, v)
        out[sigma] = total
    return MinkowskiWeight(fan, weight.codim + 1, out)


def _cover_map(fan, k):
    """For each (k-1)-cone, the k-cones covering it."""
    covers = {}
    for tau in fan.cones_of_dim(k):
        for r in tau:
            covers.setdefault(tau - {r}, []).append(tau)
    return covers


def check_balanced(weight: MinkowskiWeight) -> bool:
    """Balancing: for every cone one dimension down, the weighted sum of
    quotient-ray lifts lies in the sublattice spanned by that cone."""
    fan = weight.fan
    k = weight.cone_dim
    if k == 0:
        return True
    covers = _cover_map(fan, k)
    for sigma in fan.cones_of_dim(k - 1):
        acc = LatticeVector([0] * fan.dim)
        for tau in covers.get(sigma, ()):
            acc = acc + weight.values[tau] * _quotient_lift(fan, sigma, tau)
        gens = [fan.rays[i] for i in sorted(sigma)]
        if not in_sublattice(acc, gens):
            return False
    return True


def degree(fan: Fan, divisors) -> int:
    """deg(c1(D_1) ... c1(D_d)): iterate the recursion down to the origin."""
    divisors = list(divisors)
    if len(divisors) != fan.dim:
        raise ValueError(f"need exactly {fan.dim} divisors")
    w = fundamental_weight(fan)
    for d in divisors:
        w = intersect_divisor(w, d, check=False)
    return w.values[frozenset()]


def elementary_divisor(fan: Fan, ray_index: int) -> TDivisor:
    coeffs = [0] * len(fan.rays)
    coeffs[ray_index] = 1
    return TDivisor(fan, coeffs)


def nonface_product_vanishes(fan: Fan, ray_indices) -> bool:
    """True iff the rays span no cone of the fan; verifies in that case
    that the corresponding weight product is identically zero."""
    idx = list(ray_indices)
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate rays")
    if len(idx) > fan.dim:
        raise ValueError("more rays than the dimension")
    is_nonface = frozenset(idx) not in fan.cones
    if is_nonface:
        w = fundamental_weight(fan)
        for i in idx:
            w = intersect_divisor(w, elementary_divisor(fan, i), check=False)
        if not w.is_zero():
            raise AssertionError(
                "non-face product produced a nonzero weight; balancing bug"
            )
    return is_nonface


# ----------------------------------------------------------------------
# mixed volume through the weight recursion


def mixed_volume(polytopes) -> Fraction:
    """V(K_1,...,K_d) = deg(prod c1) / d! on a regularized normal fan of
    the Minkowski sum."""
    polys = list(polytopes)
    d = polys[0].ambient_dim
    if len(polys) != d:
        raise ValueError("need d polytopes in dimension d")
    total = polys[0]
    for K in polys[1:]:
        total = total + K
    if not total.is_full_dimensional():
        raise ValueError("Minkowski sum is lower-dimensional")
    fan, _ = normal_fan(total)
    fan = fan.regularize()
    divs = [divisor_of_polytope(fan, K) for K in polys]
    deg = degree(fan, divs)
    fact = 1
    for i in range(2, d + 1):
        fact *= i
    return Fraction(deg, fact)


# ----------------------------------------------------------------------
# Jurkiewicz-Danilov presentation


def jd_presentation(fan: Fan):
    """Generators of the Chow/cohomology presentation of a smooth complete
    fan: one variable per ray, monomial relations from minimal non-faces,
    linear relations from a basis of M.

    Returns a dict with keys 'variables', 'nonface_monomials' (lists of
    ray-index tuples) and 'linear_forms' (per basis character, list of
    integer coefficients aligned with the ray table).
    """
    if not (fan.is_smooth() and fan.is_complete()):
        raise ValueError("presentation requires a smooth complete fan")
    from itertools import combinations

    r = len(fan.rays)
    nonfaces = []
    for size in range(1, fan.dim + 2):
        for sub in combinations(range(r), size):
            key = frozenset(sub)
            if key in fan.cones:
                continue
            if any(frozenset(s) <= key and frozenset(s) != key for s in nonfaces):
                continue
            # minimal: every proper subset is a cone
            if all(
                frozenset(sub2) in fan.cones
                for sub2 in combinations(sub, size - 1)
            ):
                nonfaces.append(tuple(sub))
    linear = []
    d = fan.dim
    for j in range(d):
        m = DualVector([1 if i == j else 0 for i in range(d)])
        linear.append([pairing(m, u) for u in fan.rays])
    return {
        "variables": [f"t{i}" for i in range(r)],
        "nonface_monomials": nonfaces,
        "linear_forms": linear,
    }
