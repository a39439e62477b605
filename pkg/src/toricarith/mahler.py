"""Mahler measures, the Bloch-Wigner dilogarithm, and canonical heights.

Mahler measures are averages of log|P| over the unit torus; they are the
only numeric quantities of the toolkit (midpoint product grids with
doubling refinement).  Heights of rational torus points are assembled
exactly place by place and only the final logarithms are floating point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import factorint

from .lattice import DualVector
from .polytopes import LatticePolytope, LaurentPolynomial


@dataclass(frozen=True)
class MahlerEstimate:
    value: float
    grid: int  # points per axis of the finest grid used
    error: float  # |estimate(n) - estimate(n/2)|

    def __float__(self):
        return self.value


class Place:
    """A place of Q: the archimedean place or a finite prime."""

    __slots__ = ("prime",)

    def __init__(self, prime=None):
        if prime is not None:
            prime = int(prime)
            if prime < 2:
                raise ValueError("finite places are indexed by primes")
        self.prime = prime

    @property
    def is_archimedean(self):
        return self.prime is None

    def abs(self, x) -> Fraction:
        """Normalized absolute value |x|_v of a nonzero rational."""
        x = Fraction(x)
        if x == 0:
            raise ValueError("absolute value of zero")
        if self.prime is None:
            return abs(x)
        v = _padic_valuation(x, self.prime)
        return Fraction(1, self.prime) ** v

    def __eq__(self, other):
        return isinstance(other, Place) and self.prime == other.prime

    def __hash__(self):
        return hash(("place", self.prime))

    def __repr__(self):
        return "Place(oo)" if self.prime is None else f"Place({self.prime})"


def _padic_valuation(x: Fraction, p: int) -> int:
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


# ----------------------------------------------------------------------
# numeric Mahler measure


def _grid_estimate(poly: LaurentPolynomial, n: int, shift: float) -> float:
    d = poly.ambient_dim
    exps = np.array([list(e) for e in poly.terms], dtype=np.int64)  # t x d
    coeffs = np.array([complex(c) for c in poly.terms.values()])
    theta = 2.0 * math.pi * (np.arange(n) + 0.5 + shift) / n
    # separable evaluation: per-axis character tables, contracted by einsum
    tables = [np.exp(1j * np.outer(theta, exps[:, j])) for j in range(d)]
    tables[0] = tables[0] * coeffs[None, :]
    letters = "abcdefgh"[:d]
    spec = ",".join(f"{ax}t" for ax in letters) + "->" + letters
    vals = np.einsum(spec, *tables)
    mags = np.abs(vals).ravel()
    if np.any(mags == 0.0):
        return math.nan
    return float(np.mean(np.log(mags)))


def mahler_numeric(
    poly: LaurentPolynomial,
    tol: float = 1e-6,
    start: int = 16,
    max_points: int = 1 << 22,
) -> MahlerEstimate:
    """Midpoint-rule Mahler measure with doubling refinement.

    The shifted grid avoids zeros of P on grid nodes generically; if a
    zero is hit anyway the grid is re-jittered before giving up.
    """
    if poly.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    if len(poly.terms) == 1:
        ((e, c),) = poly.terms.items()
        return MahlerEstimate(math.log(abs(float(c))), 0, 0.0)
    d = poly.ambient_dim
    n = max(8, start)
    prev = None
    est = None
    err = math.inf
    while True:
        val = _grid_estimate(poly, n, 0.0)
        for jitter in (0.137, 0.261, 0.413):
            if math.isfinite(val):
                break
            val = _grid_estimate(poly, n, jitter)
        if not math.isfinite(val):
            raise ArithmeticError("integrand not finite after jittering")
        if prev is not None:
            err = abs(val - prev)
            est = val
            if err < tol:
                break
        prev = val
        if (2 * n) ** d > max_points:
            est = val
            break
        n *= 2
    return MahlerEstimate(est, n, err if math.isfinite(err) else math.nan)


def mahler_univariate_exact(poly: LaurentPolynomial) -> float:
    """Jensen's formula: log|lead| plus log of root moduli outside the
    circle.  Oracle for the univariate numeric measure."""
    if poly.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    exps = sorted(poly.terms)
    nz = [j for j in range(len(exps[0])) if any(e[j] != 0 for e in exps)]
    if len(nz) > 1:
        raise ValueError("polynomial is not univariate")
    if not nz:
        ((e, c),) = poly.terms.items()
        return math.log(abs(float(c)))
    j = nz[0]
    lo = min(e[j] for e in exps)
    hi = max(e[j] for e in exps)
    coeffs = [0.0] * (hi - lo + 1)
    for e, c in poly.terms.items():
        coeffs[hi - e[j]] = float(c)
    roots = np.roots(coeffs)
    total = math.log(abs(coeffs[0]))
    for r in roots:
        total += math.log(max(1.0, abs(complex(r))))
    return total


# ----------------------------------------------------------------------
# Bloch-Wigner dilogarithm

_PI2_6 = math.pi * math.pi / 6.0


def _bernoulli_floats(count):
    # B_0 .. B_{count-1} via the classical recurrence, exact then floated
    from math import comb

    bern = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for k in range(m):
            acc += Fraction(comb(m + 1, k)) * bern[k]
        bern.append(-acc / (m + 1))
    return [float(b) for b in bern]


_BERN = _bernoulli_floats(40)


def _li2_series(z: complex) -> complex:
    # Debye series in w = -log(1-z); fast for |w| well below 2*pi
    w = -cmath.log(1.0 - z)
    total = 0j
    term = w  # w^{k+1}/(k+1)! at k=0
    for k in range(len(_BERN)):
        total += _BERN[k] * term
        term *= w / (k + 2)
        # odd Bernoulli numbers beyond B_1 vanish; only stop on a genuinely
        # negligible magnitude of the running power
        if abs(term) < 1e-20 * max(1.0, abs(total)):
            break
    return total


def dilog(z: complex) -> complex:
    """Principal branch of li_2 on C minus [1, oo)."""
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(_PI2_6)
    if abs(z) > 1.0:
        return -dilog(1.0 / z) - _PI2_6 - 0.5 * cmath.log(-z) ** 2
    if z.real > 0.5:
        return _PI2_6 - cmath.log(z) * cmath.log(1.0 - z) - dilog(1.0 - z)
    return _li2_series(z)


BLOCH_WIGNER_MAX = 1.0149416064096537  # D at the primitive sixth root of unity


def bloch_wigner(z: complex) -> float:
    """D(z) = Im li_2(z) + log|z| arg(1-z); single-valued off {0, 1}."""
    z = complex(z)
    if z == 0 or z == 1:
        raise ValueError("Bloch-Wigner dilogarithm undefined at 0 and 1")
    if z.imag == 0:
        # real axis: D vanishes
        return 0.0
    val = dilog(z).imag + math.log(abs(z)) * cmath.phase(1.0 - z)
    return val


# ----------------------------------------------------------------------
# Mahler measure of linear forms


def mahler_linear_form(moduli) -> float:
    """Closed-form Mahler measure of a_0 X_0 + ... + a_n X_n, n in {1, 2},
    as a function of the coefficient moduli."""
    a = [float(x) for x in moduli]
    if any(x < 0 for x in a):
        raise ValueError("moduli must be nonnegative")
    if all(x == 0 for x in a):
        raise ValueError("not all moduli may vanish")
    if len(a) == 2:
        return math.log(max(a))
    if len(a) != 3:
        raise ValueError("closed form available for 2 or 3 terms only")
    a0, a1, a2 = a
    s = sorted(a)
    if s[2] >= s[0] + s[1] or min(a) == 0.0:
        return math.log(max(a))
    # interior angles opposite each side, by the law of cosines
    def angle(x, y, z):  # angle opposite side x
        c = (y * y + z * z - x * x) / (2.0 * y * z)
        return math.acos(max(-1.0, min(1.0, c)))

    alpha0 = angle(a0, a1, a2)
    alpha1 = angle(a1, a0, a2)
    alpha2 = angle(a2, a0, a1)
    val = (
        alpha0 / math.pi * math.log(a0)
        + alpha1 / math.pi * math.log(a1)
        + alpha2 / math.pi * math.log(a2)
        + bloch_wigner((a1 / a0) * cmath.exp(1j * alpha2)) / math.pi
    )
    return val


def mahler_best(poly: LaurentPolynomial, tol: float = 1e-6) -> float:
    """Mahler measure, using a closed form when one applies."""
    if poly.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    if len(poly.terms) == 1:
        ((_, c),) = poly.terms.items()
        return math.log(abs(float(c)))
    exps = sorted(poly.terms)
    nz = [j for j in range(poly.ambient_dim) if any(e[j] != 0 for e in exps)]
    if len(nz) <= 1:
        return mahler_univariate_exact(poly)
    if _is_affine_form(poly):
        mods = [abs(float(c)) for _, c in sorted(poly.terms.items())]
        if len(mods) in (2, 3):
            return mahler_linear_form(mods)
    return mahler_numeric(poly, tol=tol).value


def _is_affine_form(poly):
    """Support contained in {0, e_1, ..., e_d} with distinct exponents."""
    seen = set()
    for e in poly.terms:
        nz = [(j, x) for j, x in enumerate(e) if x != 0]
        if len(nz) > 1:
            return False
        if nz and nz[0][1] != 1:
            return False
        key = nz[0][0] if nz else None
        if key in seen:
            return False
        seen.add(key)
    return True


# ----------------------------------------------------------------------
# heights


def height_hypersurface(fan, line_bundles, s: LaurentPolynomial, tol=1e-6) -> float:
    """Height of the zero divisor of a section: intersection degree of the
    given nef divisors times the Mahler measure of the section."""
    from .intersection import degree

    if s.is_zero():
        raise ValueError("section must be nonzero")
    deg = degree(fan, line_bundles)
    if deg == 0:
        return 0.0
    return deg * mahler_best(s, tol)


def height_place_data(K: LatticePolytope, x):
    """Exact per-place maxima of |x^m| over the vertices of K.

    Returns (archimedean max as a Fraction, {prime: max valuation exponent
    e_p with max_m |x^m|_p = p^{e_p}}).
    """
    coords = [Fraction(c) for c in x]
    if len(coords) != K.ambient_dim:
        raise ValueError("point dimension mismatch")
    if any(c == 0 for c in coords):
        raise ValueError("torus points have nonzero coordinates")
    arch = max(
        abs(_rational_power(coords, m)) for m in K.vertices
    )
    primes = set()
    for c in coords:
        primes.update(factorint(abs(c.numerator)))
        primes.update(factorint(c.denominator))
    pexp = {}
    for p in sorted(primes):
        vals = [_padic_valuation(c, p) for c in coords]
        # |x^m|_p = p^{-<vals, m>}; maximize over vertices
        e = max(-sum(v * mi for v, mi in zip(vals, m)) for m in K.vertices)
        pexp[p] = e
    return arch, pexp


def _rational_power(coords, m) -> Fraction:
    val = Fraction(1)
    for c, e in zip(coords, m):
        val *= Fraction(c) ** int(e)
    return val


def canonical_height_point(K: LatticePolytope, x) -> float:
    """h_K(x) = sum over places of log max over K and M of |x^m|_v,
    for a rational point of the torus."""
    arch, pexp = height_place_data(K, x)
    total = math.log(arch)
    for p, e in pexp.items():
        total += e * math.log(p)
    return total
