"""Lattice polytopes in the character lattice M and Laurent polynomials.

Support functions follow the inf convention: psi_K(u) = min over K of
<v, u>, so psi is concave and positively homogeneous and the divisor
attached to a polytope has ray coefficients a_i = -psi_K(u_i).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from . import geometry
from .cones import Fan
from .lattice import DualVector, LatticeVector, pairing, primitive, rank, solve_exact


class LatticePolytope:
    """Convex hull of finitely many points of M, stored by extreme points."""

    def __init__(self, points):
        pts = [p if isinstance(p, DualVector) else DualVector(p) for p in points]
        if not pts:
            raise ValueError("empty polytope")
        self.ambient_dim = len(pts[0])
        for p in pts:
            if len(p) != self.ambient_dim:
                raise ValueError("vertex dimension mismatch")
        coords = [p.coords for p in pts]
        _, _, adim = geometry.affine_basis(coords)
        self.dim = adim
        if adim == self.ambient_dim and self.ambient_dim > 0:
            facets, vidx = geometry.convex_hull_facets(coords)
            self.facets = [(LatticeVector(n), b) for n, b in facets]
            self.vertices = tuple(sorted(DualVector(coords[i]) for i in vidx))
        else:
            # lower-dimensional: reduce to the saturated affine lattice
            red, to_amb, _ = geometry.reduce_to_affine_lattice(coords)
            if adim == 0:
                self.vertices = (pts[0],)
                self.facets = []
            else:
                _, vidx = geometry.convex_hull_facets(red)
                self.vertices = tuple(
                    sorted(DualVector(coords[i]) for i in vidx)
                )
                self.facets = []

    # ------------------------------------------------------------------

    def is_full_dimensional(self):
        return self.dim == self.ambient_dim

    def support_function(self, u: LatticeVector) -> Fraction:
        """psi_K(u) = min over vertices of <v, u>."""
        if not isinstance(u, LatticeVector):
            raise TypeError("support function takes a LatticeVector")
        return Fraction(min(pairing(v, u) for v in self.vertices))

    def minkowski_sum(self, other: "LatticePolytope") -> "LatticePolytope":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return LatticePolytope(
            [a + b for a in self.vertices for b in other.vertices]
        )

    def __add__(self, other):
        return self.minkowski_sum(other)

    def dilate(self, k: int) -> "LatticePolytope":
        if k < 0:
            raise ValueError("dilation factor must be nonnegative")
        if k == 0:
            return LatticePolytope([DualVector([0] * self.ambient_dim)])
        return LatticePolytope([k * v for v in self.vertices])

    def __mul__(self, k):
        return self.dilate(k)

    __rmul__ = __mul__

    def __neg__(self):
        return LatticePolytope([-v for v in self.vertices])

    def __eq__(self, other):
        return (
            isinstance(other, LatticePolytope) and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"LatticePolytope({[tuple(v) for v in self.vertices]})"

    # ------------------------------------------------------------------

    def contains(self, point) -> bool:
        """Exact membership of a rational point."""
        vec = [Fraction(x) for x in point]
        if self.is_full_dimensional():
            return all(
                sum(Fraction(n[i]) * vec[i] for i in range(self.ambient_dim)) >= b
                for n, b in self.facets
            )
        # express as a convex combination of vertices
        return _in_hull(vec, [v.coords for v in self.vertices])

    def lattice_points(self):
        """All points of K and M, in lexicographic order."""
        d = self.ambient_dim
        lo = [min(v[i] for v in self.vertices) for i in range(d)]
        hi = [max(v[i] for v in self.vertices) for i in range(d)]
        out = []
        for pt in product(*[range(lo[i], hi[i] + 1) for i in range(d)]):
            if self.contains(pt):
                out.append(DualVector(pt))
        return out

    def volume(self) -> Fraction:
        if not self.is_full_dimensional():
            return Fraction(0)
        return geometry.volume([v.coords for v in self.vertices])

    # ------------------------------------------------------------------
    # face structure

    def vertex_facets(self):
        """Per-vertex list of indices of facets active at the vertex."""
        out = []
        for v in self.vertices:
            act = [
                k
                for k, (n, b) in enumerate(self.facets)
                if pairing(v, n) == b
            ]
            out.append(act)
        return out

    def edges(self):
        """Vertex-index pairs forming edges (full-dimensional only)."""
        if not self.is_full_dimensional():
            raise ValueError("edge enumeration requires a full-dimensional polytope")
        vf = self.vertex_facets()
        d = self.ambient_dim
        if d == 1:
            return [(0, 1)] if len(self.vertices) == 2 else []
        out = []
        for i, j in combinations(range(len(self.vertices)), 2):
            common = sorted(set(vf[i]) & set(vf[j]))
            if not common:
                continue
            normals = [self.facets[k][0].coords for k in common]
            if rank(normals) == d - 1:
                # the shared facets must cut out exactly the segment
                if _edge_certificate(self, i, j, common):
                    out.append((i, j))
        return out

    def edge_directions(self, vertex_index):
        """Primitive directions of the edges leaving one vertex."""
        dirs = []
        for i, j in self.edges():
            if i == vertex_index:
                dirs.append(primitive(self.vertices[j] - self.vertices[i]))
            elif j == vertex_index:
                dirs.append(primitive(self.vertices[i] - self.vertices[j]))
        return dirs

    def is_absolutely_simple(self):
        """Every vertex meets exactly d edges whose primitive directions
        form a Z-basis of M.  Returns (flag, per-vertex direction lists).
        """
        if not self.is_full_dimensional():
            raise ValueError("absolute simplicity requires a full-dimensional polytope")
        from .lattice import det

        d = self.ambient_dim
        data = []
        for i in range(len(self.vertices)):
            dirs = self.edge_directions(i)
            if len(dirs) != d:
                return False, None
            if abs(det([list(v.coords) for v in dirs])) != 1:
                return False, None
            data.append(dirs)
        return True, data

    def norm(self) -> int:
        """Max total of the nonnegative edge-basis coordinates of any
        vertex difference (defined for absolutely simple polytopes)."""
        ok, data = self.is_absolutely_simple()
        if not ok:
            raise ValueError("polytope norm requires absolute simplicity")
        if len(self.vertices) == 1:
            return 0
        best = 0
        for i, s in enumerate(self.vertices):
            basis = [list(v.coords) for v in data[i]]
            bt = [[basis[j][r] for j in range(len(basis))] for r in range(self.ambient_dim)]
            for j, s2 in enumerate(self.vertices):
                if i == j:
                    continue
                diff = [Fraction(x) for x in (s2 - s).coords]
                coeffs = solve_exact(bt, diff)
                for c in coeffs:
                    if c.denominator != 1 or c < 0:
                        raise ArithmeticError(
                            "vertex difference has non-integral or negative "
                            "edge-basis expansion"
                        )
                best = max(best, sum(int(c) for c in coeffs))
        return best


def _edge_certificate(poly, i, j, common):
    """Check no third vertex lies on all the shared facets."""
    for k, v in enumerate(poly.vertices):
        if k in (i, j):
            continue
        if all(pairing(v, poly.facets[f][0]) == poly.facets[f][1] for f in common):
            return False
    return True


def _in_hull(vec, vertex_coords):
    """Is vec a convex combination of the given points (exact)."""
    # reduce to the affine hull, then test with facets there
    base = vertex_coords[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in vertex_coords]
    target = [Fraction(a) - Fraction(b) for a, b in zip(vec, base)]
    _, rows, adim = geometry.affine_basis(vertex_coords)
    if adim == 0:
        return all(x == 0 for x in target)
    # coordinates in the affine basis; off-span -> outside
    bt = [[Fraction(rows[j][i]) for j in range(adim)] for i in range(len(base))]
    try:
        tcoord = geometry._solve_rect(bt, target)
    except ValueError:
        return False
    red = []
    for dvec in diffs:
        red.append(tuple(int(x) for x in geometry._solve_rect(bt, dvec)))
    facets, _ = geometry.convex_hull_facets(red)
    return all(
        sum(Fraction(n[i]) * tcoord[i] for i in range(adim)) >= b for n, b in facets
    )


# ----------------------------------------------------------------------
# Laurent polynomials


class LaurentPolynomial:
    """Finite map from exponents in M to nonzero rational coefficients."""

    def __init__(self, terms):
        clean = {}
        dim = None
        for expo, coeff in dict(terms).items():
            e = expo if isinstance(expo, DualVector) else DualVector(expo)
            c = Fraction(coeff)
            if dim is None:
                dim = len(e)
            elif len(e) != dim:
                raise ValueError("exponent dimension mismatch")
            if c != 0:
                clean[e] = c
        self.terms = clean
        self.ambient_dim = dim if dim is not None else 0

    @classmethod
    def zero(cls, dim):
        p = cls({})
        p.ambient_dim = dim
        return p

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def newton_polytope(self) -> LatticePolytope:
        if self.is_zero():
            raise ValueError("zero polynomial has no Newton polytope")
        return LatticePolytope(self.support())

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = e1 + e2
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return LaurentPolynomial(out)

    def __call__(self, x):
        """Evaluate at a point of the complex torus (no zero coordinates)."""
        total = 0j
        for e, c in self.terms.items():
            term = complex(c)
            for xi, ei in zip(x, e):
                term *= xi ** ei
            total += term
        return total

    def __repr__(self):
        parts = [f"{c}*x^{tuple(e)}" for e, c in sorted(self.terms.items())]
        return " + ".join(parts) if parts else "0"


def newton_polytope(p: LaurentPolynomial) -> LatticePolytope:
    return p.newton_polytope()


# ----------------------------------------------------------------------
# normal fan


def normal_fan(K: LatticePolytope):
    """Coarsest complete fan on which psi_K is linear, triangulated.

    Returns (fan, coefficients) where coefficients a_i = -psi_K(u_i) give
    the ample divisor with polytope K; maximal cones are triangulated
    using only the facet-normal rays (consistently across shared faces).
    """
    if not K.is_full_dimensional():
        raise ValueError("normal fan requires a full-dimensional polytope")
    d = K.ambient_dim
    rays = [primitive(LatticeVector(n.coords)) for n, _ in K.facets]
    # face lattice of K: faces keyed by frozenset of active facet indices
    faces = _face_lattice(K)
    # triangulate the normal cone of each vertex by global pulling
    cache = {}
    max_cones = []
    for vi, v in enumerate(K.vertices):
        act = frozenset(
            k for k, (n, b) in enumerate(K.facets) if pairing(v, n) == b
        )
        for simplex in _triangulate_normal_cone(act, faces, rays, d, cache):
            max_cones.append(simplex)
    fan = Fan(rays, max_cones, validate=False)
    coeffs = [int(-K.support_function(u)) for u in fan.rays]
    return fan, coeffs


def _face_lattice(K):
    """Faces of K as {active facet set: (dim, vertex set)}; excludes K itself."""
    nfac = len(K.facets)
    vf = K.vertex_facets()
    faces = {}

    def add(active):
        active = frozenset(active)
        if active in faces or not active:
            return
        verts = [i for i in range(len(K.vertices)) if active <= set(vf[i])]
        if not verts:
            return
        # actual active set of that vertex collection
        true_active = frozenset.intersection(*[frozenset(vf[i]) for i in verts])
        if true_active not in faces:
            coords = [K.vertices[i].coords for i in verts]
            _, _, adim = geometry.affine_basis(coords)
            faces[true_active] = (adim, frozenset(verts))

    for k in range(nfac):
        add({k})
    changed = True
    while changed:
        changed = False
        keys = list(faces)
        for a, b in combinations(keys, 2):
            u = a | b
            if u not in faces:
                before = len(faces)
                add(u)
                if len(faces) != before:
                    changed = True
    for i in range(len(K.vertices)):
        add(set(vf[i]))
    return faces


def _triangulate_normal_cone(active, faces, rays, d, cache):
    """Pulling triangulation of the normal cone of the face with the given
    active facet set.  Returns frozensets of ray (=facet) indices; globally
    consistent because each face's triangulation depends only on the face.
    """
    active = frozenset(active)
    if active in cache:
        return cache[active]
    ridx = sorted(active)
    if rank([rays[i].coords for i in ridx]) == len(ridx):
        out = [frozenset(ridx)]
        cache[active] = out
        return out
    face_dim = faces[active][0]
    r0 = ridx[0]
    out = []
    # facets of the normal cone = normal cones of superfaces one dim up
    for sup, (sdim, _) in faces.items():
        if sdim != face_dim + 1 or not sup < active:
            continue
        if r0 in sup:
            continue
        for simplex in _triangulate_normal_cone(sup, faces, rays, d, cache):
            out.append(simplex | {r0})
    cache[active] = out
    return out


# ----------------------------------------------------------------------
# mixed volume oracle


def mixed_volume_oracle(polytopes):
    """Inclusion-exclusion mixed volume: d! V = sum over nonempty S of
    (-1)^(d-|S|) vol(sum of K_i, i in S)."""
    d = len(polytopes)
    for K in polytopes:
        if K.ambient_dim != d:
            raise ValueError("need d polytopes in dimension d")
    fact = 1
    for i in range(2, d + 1):
        fact *= i
    total = Fraction(0)
    for r in range(1, d + 1):
        for sub in combinations(range(d), r):
            s = polytopes[sub[0]]
            for i in sub[1:]:
                s = s + polytopes[i]
            total += (-1) ** (d - r) * s.volume()
    return total / fact
