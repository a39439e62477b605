"""Exact integer/rational linear algebra over the lattice N and its dual M.

Vectors of N and of M are distinct types: geometry lives in N (ray
generators, fan data) while characters/exponents live in M.  The only way
to combine them is through the bilinear pairing.  Everything here is exact;
no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class DimensionMismatch(ValueError):
    pass


class _Vec:
    """Immutable integer vector; base for the two lattice types."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(int(c) for c in coords)

    @property
    def dim(self):
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    def __eq__(self, other):
        return type(self) is type(other) and self.coords == other.coords

    def __lt__(self, other):
        self._check(other)
        return self.coords < other.coords

    def __add__(self, other):
        self._check(other)
        return type(self)(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return type(self)(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return type(self)(-a for a in self.coords)

    def __mul__(self, k):
        return type(self)(k * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def _check(self, other):
        if type(self) is not type(other):
            raise TypeError(
                f"cannot mix {type(self).__name__} with {type(other).__name__}"
            )
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch(
                f"dimension {len(self.coords)} vs {len(other.coords)}"
            )

    def __repr__(self):
        return f"{type(self).__name__}{self.coords}"


class LatticeVector(_Vec):
    """Element of N (the lattice of one-parameter subgroups)."""


class DualVector(_Vec):
    """Element of M (the character lattice, dual to N)."""


def pairing(m: DualVector, n: LatticeVector) -> int:
    """Nondegenerate bilinear pairing M x N -> Z."""
    if not isinstance(m, DualVector):
        raise TypeError(f"first argument must be DualVector, got {type(m).__name__}")
    if not isinstance(n, LatticeVector):
        raise TypeError(
            f"second argument must be LatticeVector, got {type(n).__name__}"
        )
    if len(m) != len(n):
        raise DimensionMismatch(f"dimension {len(m)} vs {len(n)}")
    return sum(a * b for a, b in zip(m.coords, n.coords))


def content(coords) -> int:
    g = 0
    for c in coords:
        g = gcd(g, abs(int(c)))
    return g


def primitive(v):
    """Divide a nonzero vector by the gcd of its coordinates."""
    if v.is_zero():
        raise ValueError("zero vector has no primitive generator")
    g = content(v.coords)
    return type(v)(c // g for c in v.coords)


def det(rows) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix is not square")
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite_normal_form(rows):
    """Row Hermite normal form.

    Returns (H, U) with U unimodular, U @ M = H, H upper-echelon with
    positive pivots and reduced entries above each pivot.
    """
    m = len(rows)
    a = [[int(x) for x in row] for row in rows]
    n = len(a[0]) if m else 0
    for row in a:
        if len(row) != n:
            raise ValueError("matrix is not rectangular")
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def addrow(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        swap(r, piv)
        # clear the column below by gcd steps
        while True:
            nz = [i for i in range(r + 1, m) if a[i][c] != 0]
            if not nz:
                break
            for i in nz:
                q = a[i][c] // a[r][c]
                addrow(i, r, -q)
                if a[i][c] != 0:
                    swap(r, i)
        if a[r][c] < 0:
            negate(r)
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                addrow(i, r, -q)
        r += 1
        if r == m:
            break
    return a, u


def hnf_rank(h) -> int:
    return sum(1 for row in h if any(x != 0 for x in row))


def in_sublattice(v, gens) -> bool:
    """Whether v lies in the integer span of gens (via HNF elimination)."""
    coords = list(v.coords) if isinstance(v, _Vec) else [int(x) for x in v]
    rows = [list(g.coords) if isinstance(g, _Vec) else [int(x) for x in g] for g in gens]
    for row in rows:
        if len(row) != len(coords):
            raise DimensionMismatch("generator dimension mismatch")
    if all(x == 0 for x in coords):
        return True
    if not rows:
        return False
    h, _ = hermite_normal_form(rows)
    w = list(coords)
    for row in h:
        p = next((j for j, x in enumerate(row) if x != 0), None)
        if p is None:
            continue
        if w[p] % row[p] != 0:
            return False
        q = w[p] // row[p]
        w = [x - q * y for x, y in zip(w, row)]
    return all(x == 0 for x in w)


def rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    h, _ = hermite_normal_form(rows)
    return hnf_rank(h)


def solve_exact(a_rows, b):
    """Solve A x = b exactly over Q; A square nonsingular. Returns Fractions."""
    n = len(a_rows)
    a = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a_rows, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(a[i][n] for i in range(n))


def nullspace(a_rows, ncols=None):
    """Basis of the rational null space of A (list of Fraction tuples)."""
    m = len(a_rows)
    if ncols is None:
        ncols = len(a_rows[0]) if m else 0
    a = [[Fraction(x) for x in row] for row in a_rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -a[i][fc]
        basis.append(tuple(vec))
    return basis


def maximal_minor_gcd(rows) -> int:
    """gcd of all maximal minors of a full-row-rank integer matrix.

    Equals 1 exactly when the rows extend to a Z-basis of the ambient
    lattice (the smoothness test for simplicial cones).
    """
    from itertools import combinations

    k = len(rows)
    n = len(rows[0]) if k else 0
    if k > n:
        raise ValueError("more rows than columns")
    g = 0
    for cols in combinations(range(n), k):
        sub = [[row[c] for c in cols] for row in rows]
        g = gcd(g, abs(det(sub)))
        if g == 1:
            return 1
    return g
