"""Simplicial rational cones and complete fans.

Only simplicial cones are stored; a non-simplicial maximal cone coming
from a normal-fan construction is triangulated on construction using its
own rays (see :func:`toricarith.polytopes.normal_fan`).  Fans are kept as
ray tables plus cones keyed by sorted ray-index sets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .lattice import (
    LatticeVector,
    det,
    hermite_normal_form,
    maximal_minor_gcd,
    primitive,
    rank,
    solve_exact,
)


class FanValidationError(ValueError):
    pass


class DuplicateRayError(FanValidationError):
    pass


class NonStrictConeError(FanValidationError):
    pass


class NonSimplicialConeError(FanValidationError):
    pass


class IntersectionNotFaceError(FanValidationError):
    pass


class Cone:
    """Strict simplicial rational cone spanned by primitive, independent rays."""

    __slots__ = ("rays", "ambient_dim")

    def __init__(self, rays, ambient_dim=None):
        rays = tuple(rays)
        if ambient_dim is None:
            if not rays:
                raise ValueError("ambient dimension required for the zero cone")
            ambient_dim = len(rays[0])
        for r in rays:
            if not isinstance(r, LatticeVector):
                raise TypeError("cone rays must be LatticeVectors")
            if len(r) != ambient_dim:
                raise FanValidationError("ray dimension mismatch")
            if r.is_zero():
                raise NonStrictConeError("zero vector is not a ray")
            if primitive(r) != r:
                raise FanValidationError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise DuplicateRayError("duplicate ray in cone")
        if rays and rank([r.coords for r in rays]) != len(rays):
            if positive_dependence([r.coords for r in rays]):
                raise NonStrictConeError("cone contains a line")
            raise NonSimplicialConeError("rays are linearly dependent")
        self.rays = rays
        self.ambient_dim = ambient_dim

    @property
    def dim(self):
        return len(self.rays)

    def faces(self):
        """All faces of a simplicial cone: one per subset of rays."""
        out = []
        for k in range(self.dim + 1):
            for sub in combinations(self.rays, k):
                out.append(Cone(sub, self.ambient_dim))
        return out

    def contains(self, vec_coords):
        """Exact membership of a rational point (tuple of Fractions)."""
        lam = self.ray_coordinates(vec_coords)
        return lam is not None and all(x >= 0 for x in lam)

    def contains_in_relative_interior(self, vec_coords):
        lam = self.ray_coordinates(vec_coords)
        if self.dim == 0:
            return all(Fraction(x) == 0 for x in vec_coords)
        return lam is not None and all(x > 0 for x in lam)

    def ray_coordinates(self, vec_coords):
        """Coordinates of a point in the ray basis, or None if off-span."""
        vec = [Fraction(x) for x in vec_coords]
        if self.dim == 0:
            return () if all(x == 0 for x in vec) else None
        # solve R^T lam = vec restricted to the span
        at = [[Fraction(r[i]) for r in self.rays] for i in range(self.ambient_dim)]
        lam = _solve_least(at, vec)
        if lam is None:
            return None
        # verify (span check)
        for i in range(self.ambient_dim):
            if sum(Fraction(r[i]) * l for r, l in zip(self.rays, lam)) != vec[i]:
                return None
        return tuple(lam)

    def multiplicity(self):
        """Index of Z<rays> in its saturation; 1 iff the cone is smooth.

        Equals the gcd of the maximal minors of the ray matrix (the top
        determinantal divisor), which for full-dimensional simplicial
        cones is just |det|.
        """
        if self.dim == 0:
            return 1
        rows = [list(r.coords) for r in self.rays]
        if self.dim == self.ambient_dim:
            return abs(det(rows))
        return maximal_minor_gcd(rows)

    def __eq__(self, other):
        return (
            isinstance(other, Cone)
            and self.ambient_dim == other.ambient_dim
            and frozenset(self.rays) == frozenset(other.rays)
        )

    def __hash__(self):
        return hash((self.ambient_dim, frozenset(self.rays)))

    def __repr__(self):
        return f"Cone({list(self.rays)})"


def _solve_least(at_rows, b):
    """Solve an overdetermined consistent system A x = b, A given by rows."""
    m = len(at_rows)
    k = len(at_rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(at_rows, b)]
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if len(pivots) < k:
        return None
    for i in range(r, m):
        if aug[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = aug[i][k]
    return sol


def positive_dependence(rows):
    """Whether some nonzero nonnegative combination of the rows vanishes."""
    from .lattice import nullspace

    n = len(rows)
    d = len(rows[0]) if rows else 0
    for size in range(2, n + 1):
        for sub in combinations(range(n), size):
            mat = [rows[i] for i in sub]
            if rank(mat) != size - 1:
                continue
            at = [[mat[i][j] for i in range(size)] for j in range(d)]
            kern = nullspace(at, size)
            if len(kern) != 1:
                continue
            vec = kern[0]
            if all(x > 0 for x in vec) or all(x < 0 for x in vec):
                return True
    return False


class Fan:
    """Finite fan given by a global ray table and simplicial cones.

    ``cones`` maps each cone (frozenset of ray indices) to its dimension;
    the set is closed under faces by construction.
    """

    def __init__(self, rays, maximal_cones, validate=True):
        self.rays = tuple(rays)
        if not self.rays:
            raise FanValidationError("fan needs at least one ray")
        self.dim = len(self.rays[0])
        for r in self.rays:
            if not isinstance(r, LatticeVector):
                raise TypeError("fan rays must be LatticeVectors")
            if r.is_zero():
                raise NonStrictConeError("zero vector in ray table")
            if primitive(r) != r:
                raise FanValidationError(f"ray {r} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise DuplicateRayError("duplicate ray in ray table")

        maximal = {frozenset(c) for c in maximal_cones}
        self._cone_objs = {}
        cones = set()
        for c in maximal:
            if validate:
                self.cone(c)  # validates simpliciality/strictness
            for k in range(len(c) + 1):
                for sub in combinations(sorted(c), k):
                    cones.add(frozenset(sub))
        self.cones = cones
        self.maximal = sorted(
            (c for c in maximal if not any(c < o for o in maximal)),
            key=lambda c: tuple(sorted(c)),
        )
        if validate:
            self._validate_intersections()

    def cone(self, key):
        key = frozenset(key)
        if key not in self._cone_objs:
            self._cone_objs[key] = Cone(
                tuple(self.rays[i] for i in sorted(key)), self.dim
            )
        return self._cone_objs[key]

    def cones_of_dim(self, k):
        cache = getattr(self, "_by_dim", None)
        if cache is None:
            cache = {}
            object.__setattr__(self, "_by_dim", cache)
        if k not in cache:
            cache[k] = sorted(
                (c for c in self.cones if len(c) == k), key=lambda c: tuple(sorted(c))
            )
        return cache[k]

    def _validate_intersections(self):
        # pairwise intersections of maximal cones must be the common face
        for a, b in combinations(self.maximal, 2):
            common = a & b
            ca, cb = self.cone(a), self.cone(b)
            inter = _cone_intersection_rays(ca, cb)
            cc = self.cone(common)
            for rvec in inter:
                if not cc.contains(rvec):
                    raise IntersectionNotFaceError(
                        f"cones {sorted(a)} and {sorted(b)} overlap beyond their "
                        f"common face {sorted(common)}"
                    )

    # ------------------------------------------------------------------
    # predicates

    def is_smooth(self):
        """Every maximal cone generated by part of a Z-basis."""
        memo = getattr(self, "_smooth_memo", None)
        if memo is not None:
            return memo
        result = self._compute_smooth()
        object.__setattr__(self, "_smooth_memo", result)
        return result

    def _compute_smooth(self):
        for key in self.maximal:
            cone = self.cone(key)
            rows = [list(r.coords) for r in cone.rays]
            if cone.dim == self.dim:
                if abs(det(rows)) != 1:
                    return False
            elif maximal_minor_gcd(rows) != 1:
                return False
        return True

    def is_complete(self):
        """Ridge-manifold criterion: support equals all of N_R."""
        d = self.dim
        for key in self.maximal:
            if len(key) != d:
                raise FanValidationError(
                    "completeness test requires all maximal cones full-dimensional"
                )
        maxc = self.maximal
        ridge_count = {}
        for key in maxc:
            for r in key:
                ridge = key - {r}
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        if any(v != 2 for v in ridge_count.values()):
            return False
        # connectivity under ridge adjacency
        if not maxc:
            return False
        seen = {maxc[0]}
        stack = [maxc[0]]
        adj = {}
        for key in maxc:
            for r in key:
                adj.setdefault(key - {r}, []).append(key)
        while stack:
            cur = stack.pop()
            for r in cur:
                for nxt in adj[cur - {r}]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
        return len(seen) == len(maxc)

    # ------------------------------------------------------------------
    # subdivision

    def minimal_cone_containing(self, v):
        """Smallest cone of the fan containing v; None if outside support."""
        best = None
        vec = [Fraction(x) for x in v.coords]
        for key in self.maximal:
            cone = self.cone(key)
            lam = cone.ray_coordinates(vec)
            if lam is None or any(x < 0 for x in lam):
                continue
            sup = frozenset(
                i for i, x in zip(sorted(key), lam) if x > 0
            )
            if best is None or len(sup) < len(best):
                best = sup
        return best

    def stellar_subdivide(self, v, tau=None):
        """Stellar subdivision at a primitive lattice vector in the support.

        ``tau`` may supply the (known) minimal cone containing v to skip
        the support search.
        """
        if not isinstance(v, LatticeVector):
            raise TypeError("subdivision point must be a LatticeVector")
        if v.is_zero():
            raise ValueError("cannot subdivide at the zero vector")
        if primitive(v) != v:
            raise ValueError("subdivision point must be primitive")
        if tau is None:
            tau = self.minimal_cone_containing(v)
        if tau is None:
            raise ValueError(f"{v} lies outside the fan support")
        if len(tau) <= 1:
            # v is the origin (impossible, v != 0) or an existing ray
            return self
        rays = list(self.rays)
        v_idx = len(rays)
        rays.append(v)
        new_max = []
        for key in self.maximal:
            if not tau <= key:
                new_max.append(key)
                continue
            for drop in sorted(tau):
                new_max.append((key - {drop}) | {v_idx})
        return Fan(rays, new_max, validate=False)

    def regularize(self):
        """Smooth refinement by repeated stellar subdivision.

        Subdivides the worst cone at the minimal nonzero lattice point of
        its half-open ray parallelepiped (smallest barycentric-coordinate
        sum, then lexicographic), which strictly decreases multiplicities.
        """
        rays = list(self.rays)
        maximal = set(self.maximal)
        pending = list(maximal)
        changed = False
        while pending:
            key = pending.pop()
            if key not in maximal:
                continue
            cone = Cone(tuple(rays[i] for i in sorted(key)), self.dim)
            if cone.multiplicity() == 1:
                continue
            changed = True
            pt, support = _minimal_parallelepiped_point(cone)
            idx = sorted(key)
            tau = frozenset(idx[j] for j in support)
            v_idx = len(rays)
            rays.append(pt)
            for other in [k for k in maximal if tau <= k]:
                maximal.remove(other)
                for drop in tau:
                    new_key = (other - {drop}) | {v_idx}
                    maximal.add(new_key)
                    pending.append(new_key)
        if not changed:
            return self
        return Fan(rays, maximal, validate=False)

    def __repr__(self):
        return f"Fan(d={self.dim}, rays={len(self.rays)}, max={len(self.maximal)})"


def _cone_intersection_rays(ca, cb):
    """Generators (rational tuples) of the intersection of two simplicial cones."""
    ineqs, eqs = _cone_hrep(ca)
    ineqs2, eqs2 = _cone_hrep(cb)
    ineqs = ineqs + ineqs2
    eqs = eqs + eqs2
    d = ca.ambient_dim
    from .lattice import nullspace

    rays = []
    seen = set()
    neq = len(eqs)
    for k in range(len(ineqs) + 1):
        for sub in combinations(range(len(ineqs)), k):
            mat = eqs + [ineqs[i] for i in sub]
            if not mat:
                if d == 1:
                    kern = [(Fraction(1),)]
                else:
                    continue
            else:
                kern = nullspace(mat, d)
            if len(kern) != 1:
                continue
            vec = kern[0]
            for cand in (vec, tuple(-x for x in vec)):
                if all(
                    sum(a * x for a, x in zip(row, cand)) >= 0 for row in ineqs
                ) and all(
                    sum(a * x for a, x in zip(row, cand)) == 0 for row in eqs
                ):
                    key = _canon(cand)
                    if key not in seen:
                        seen.add(key)
                        rays.append(cand)
    return rays


def _canon(vec):
    from math import gcd as _gcd

    den = 1
    for x in vec:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    return tuple(ints)


def _cone_hrep(cone):
    """(inequalities, equalities) rows cutting out a simplicial cone."""
    d = cone.ambient_dim
    k = cone.dim
    if k == 0:
        eye = [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
        return [], eye
    from .lattice import nullspace

    rows = [[Fraction(x) for x in r.coords] for r in cone.rays]
    eqs = [list(v) for v in nullspace(rows, d)] if k < d else []
    # dual basis within the span: lambda_i(x) >= 0
    ineqs = []
    for i in range(k):
        # functional giving the i-th ray coordinate: solve on basis rays+kernel
        mat = [list(r) for r in rows] + eqs
        rhs = [Fraction(1) if j == i else Fraction(0) for j in range(len(mat))]
        sol = solve_exact(mat, rhs)
        ineqs.append(list(sol))
    return ineqs, eqs


def _minimal_parallelepiped_point(cone):
    """Minimal nonzero lattice point of the half-open ray parallelepiped.

    Returns (primitive point, positions of the positive ray coordinates).
    Full-dimensional cones go through vectorized integer arithmetic with
    the adjugate of the ray matrix; the coordinate condition 0 <= lam < 1
    becomes 0 <= x @ adj < |det| without any division.
    """
    from itertools import product

    k = cone.dim
    d = cone.ambient_dim
    rays = cone.rays
    corners = []
    for eps in product((0, 1), repeat=k):
        corners.append(
            tuple(sum(e * r[i] for e, r in zip(eps, rays)) for i in range(d))
        )
    lo = [min(c[i] for c in corners) for i in range(d)]
    hi = [max(c[i] for c in corners) for i in range(d)]

    if k == d:
        import numpy as np
        from .lattice import det as zdet, solve_exact

        rows = [list(r.coords) for r in rays]
        dd = zdet(rows)
        # adjugate columns: lam_j(x) = (x @ adj)_j / det
        adj_cols = []
        for j in range(d):
            rhs = [1 if i == j else 0 for i in range(d)]
            # column j of R^{-1} scaled by det: lam_j(x) = x @ col_j / det
            sol = solve_exact(rows, rhs)
            adj_cols.append([int(x * dd) for x in sol])
        adj = np.array(adj_cols, dtype=np.int64).T  # d x d
        sgn = 1 if dd > 0 else -1
        absd = abs(dd)
        grids = np.meshgrid(
            *[np.arange(lo[i], hi[i] + 1, dtype=np.int64) for i in range(d)],
            indexing="ij",
        )
        pts = np.stack([g.ravel() for g in grids], axis=1)
        lam_num = pts @ adj * sgn
        ok = np.all((lam_num >= 0) & (lam_num < absd), axis=1)
        ok &= np.any(pts != 0, axis=1)
        cand = pts[ok]
        if cand.size == 0:
            raise RuntimeError("smooth cone has no interior parallelepiped point")
        lam_cand = lam_num[ok]
        scores = lam_cand.sum(axis=1)
        order = np.lexsort(tuple(cand[:, i] for i in reversed(range(d))) + (scores,))
        pick = order[0]
        pt = tuple(int(x) for x in cand[pick])
        support = tuple(int(j) for j in range(d) if lam_cand[pick][j] > 0)
        return primitive(LatticeVector(pt)), support

    best = None
    for pt in product(*[range(lo[i], hi[i] + 1) for i in range(d)]):
        if all(x == 0 for x in pt):
            continue
        lam = cone.ray_coordinates(pt)
        if lam is None:
            continue
        if not all(0 <= x < 1 for x in lam):
            continue
        score = (sum(lam), pt)
        if best is None or score < best[0]:
            best = (score, pt, tuple(j for j, x in enumerate(lam) if x > 0))
    if best is None:
        raise RuntimeError("smooth cone has no interior parallelepiped point")
    return primitive(LatticeVector(best[1])), best[2]
