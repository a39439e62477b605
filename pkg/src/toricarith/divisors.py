"""T-invariant divisors on a smooth complete fan.

A divisor is a coefficient per ray; its support function takes the value
-a_i on the ray u_i and is linear on each maximal cone, with linear part
m_sigma in M solving <m_sigma, u_i> = -a_i.  Sign conventions are pinned
by the projective-plane hyperplane divisor, whose Cartier data must come
out as (0,0), (1,0), (0,1).
"""

from __future__ import annotations

from fractions import Fraction

from .cones import Fan
from .lattice import DualVector, LatticeVector, pairing, solve_exact
from .polytopes import LatticePolytope, LaurentPolynomial


class NotBasepointFreeError(ValueError):
    pass


class TDivisor:
    """Integer coefficient per ray of a fixed fan: D = sum a_i D_i."""

    def __init__(self, fan: Fan, coefficients):
        coeffs = tuple(int(c) for c in coefficients)
        if len(coeffs) != len(fan.rays):
            raise ValueError(
                f"expected {len(fan.rays)} coefficients, got {len(coeffs)}"
            )
        self.fan = fan
        self.coefficients = coeffs

    def __add__(self, other):
        if other.fan is not self.fan:
            raise ValueError("divisors live on different fans")
        return TDivisor(
            self.fan, [a + b for a, b in zip(self.coefficients, other.coefficients)]
        )

    def __mul__(self, k):
        return TDivisor(self.fan, [int(k) * a for a in self.coefficients])

    __rmul__ = __mul__

    def __neg__(self):
        return TDivisor(self.fan, [-a for a in self.coefficients])

    def __eq__(self, other):
        return (
            isinstance(other, TDivisor)
            and self.fan is other.fan
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        return f"TDivisor({list(self.coefficients)})"


def principal_divisor(fan: Fan, m: DualVector) -> TDivisor:
    """div(chi^m): coefficient <m, u_i> on each ray."""
    return TDivisor(fan, [pairing(m, u) for u in fan.rays])


def cartier_data(divisor: TDivisor):
    """Per-maximal-cone linear part m_sigma with <m_sigma, u_i> = -a_i.

    Requires a smooth fan so the solution is unique and integral.
    """
    import numpy as np

    fan = divisor.fan
    if not fan.is_smooth():
        raise ValueError("Cartier data requires a smooth fan")
    keys = list(fan.maximal)
    idxs = [sorted(key) for key in keys]
    if any(len(idx) != fan.dim for idx in idxs):
        raise ValueError("Cartier data requires full-dimensional maximal cones")
    # batched float solve, then exact integer verification; smooth cones
    # have unimodular ray matrices so the solutions are integers
    rays_arr = np.array([list(r.coords) for r in fan.rays], dtype=np.int64)
    coeffs = np.array(divisor.coefficients, dtype=np.int64)
    a = np.stack([rays_arr[idx] for idx in idxs])
    b = np.stack([-coeffs[idx] for idx in idxs])
    sol = np.rint(
        np.linalg.solve(a.astype(float), b.astype(float)[..., None])[..., 0]
    ).astype(np.int64)
    ok = np.all(np.einsum("cij,cj->ci", a, sol) == b, axis=1)
    data = {}
    for key, idx, row, good in zip(keys, idxs, sol, ok):
        if good:
            data[key] = DualVector(int(x) for x in row)
            continue
        rows = [list(fan.rays[i].coords) for i in idx]
        rhs = [-divisor.coefficients[i] for i in idx]
        exact = solve_exact(rows, rhs)
        if any(x.denominator != 1 for x in exact):
            raise ValueError("non-integral Cartier data on a smooth cone")
        data[key] = DualVector(int(x) for x in exact)
    return data


def support_function_eval(divisor: TDivisor, u: LatticeVector) -> Fraction:
    """psi_D(u): value of the piecewise-linear support function."""
    fan = divisor.fan
    data = cartier_data(divisor)
    vec = [Fraction(x) for x in u.coords]
    for key in fan.maximal:
        if fan.cone(key).contains(vec):
            return Fraction(pairing(data[key], u))
    raise ValueError(f"{u} outside the fan support (fan not complete?)")


def is_principal(divisor: TDivisor) -> bool:
    data = cartier_data(divisor)
    vals = list(data.values())
    return all(m == vals[0] for m in vals)


def is_basepoint_free(divisor: TDivisor) -> bool:
    """psi_D concave: <m_sigma, u_i> >= -a_i for every sigma and ray."""
    fan = divisor.fan
    data = cartier_data(divisor)
    for key in fan.maximal:
        m = data[key]
        for i, u in enumerate(fan.rays):
            if pairing(m, u) < -divisor.coefficients[i]:
                return False
    return True


def is_ample(divisor: TDivisor) -> bool:
    """Strictly concave relative to the fan: basepoint-free with pairwise
    distinct linear parts and strict inequality off each cone."""
    fan = divisor.fan
    data = cartier_data(divisor)
    for key in fan.maximal:
        m = data[key]
        for i, u in enumerate(fan.rays):
            val = pairing(m, u)
            if i in key:
                if val != -divisor.coefficients[i]:
                    return False
            elif val <= -divisor.coefficients[i]:
                return False
    vals = list(data.values())
    return len({tuple(v) for v in vals}) == len(vals)


def polytope_of_divisor(divisor: TDivisor) -> LatticePolytope:
    """K_D = hull of the Cartier linear parts (basepoint-free only)."""
    if not is_basepoint_free(divisor):
        raise NotBasepointFreeError(
            "section polytope only matches lattice points for basepoint-free divisors"
        )
    data = cartier_data(divisor)
    return LatticePolytope(list(data.values()))


def section_basis(divisor: TDivisor):
    """Characters spanning the global sections: lattice points of K_D."""
    return polytope_of_divisor(divisor).lattice_points()


def divisor_of_polytope(fan: Fan, K: LatticePolytope) -> TDivisor:
    """Divisor with a_i = -psi_K(u_i); requires psi_K linear on each
    maximal cone of the fan (some vertex minimizes on all its rays)."""
    import numpy as np

    verts = np.array([list(v.coords) for v in K.vertices], dtype=np.int64)
    rays_arr = np.array([list(r.coords) for r in fan.rays], dtype=np.int64)
    vals = verts @ rays_arr.T  # vertices x rays
    psi = vals.min(axis=0)
    attains = vals == psi[None, :]
    for key in fan.maximal:
        idx = sorted(key)
        if not attains[:, idx].all(axis=1).any():
            raise ValueError(
                f"support function of the polytope is not linear on cone {idx}"
            )
    return TDivisor(fan, [-int(x) for x in psi])


def picard_rank(fan: Fan) -> int:
    if not (fan.is_smooth() and fan.is_complete()):
        raise ValueError("Picard rank formula requires a smooth complete fan")
    return len(fan.rays) - fan.dim


# ----------------------------------------------------------------------
# canonical metric


def vertex_monomial_max(K: LatticePolytope, x) -> float:
    """max over vertices of K of |x^m| at a torus point x (floats)."""
    best = None
    for m in K.vertices:
        val = 1.0
        for xi, ei in zip(x, m):
            val *= abs(xi) ** ei
        if best is None or val > best:
            best = val
    return best


def canonical_metric_norm(divisor: TDivisor, s: LaurentPolynomial, x) -> float:
    """Canonical norm of a section at a torus point:
    |s(x)| / max over vertices(K_D) of |x^m|."""
    if any(xi == 0 for xi in x):
        raise ValueError("torus points have no zero coordinates")
    K = polytope_of_divisor(divisor)
    if not s.is_zero():
        pts = set(K.lattice_points())
        for e in s.support():
            if e not in pts:
                raise ValueError(f"support exponent {tuple(e)} outside the section polytope")
    num = abs(s(x))
    return num / vertex_monomial_max(K, x)
