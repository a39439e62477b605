"""Exact convex geometry at desk scale (ambient dimension <= 4).

Facet enumeration is brute force over candidate hyperplanes spanned by
point subsets, vectorized with integer numpy arrays; all certificates are
integral so there is no rounding anywhere.  Inputs are integer point
configurations (rational inputs are cleared of denominators by callers).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np

from .lattice import hermite_normal_form, hnf_rank, nullspace


def affine_basis(points):
    """(base index, direction rows, dim) for the affine hull of the points."""
    if not points:
        raise ValueError("empty point set")
    base = points[0]
    diffs = [[int(a) - int(b) for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0, [], 0
    h, _ = hermite_normal_form(diffs)
    rows = [row for row in h if any(x != 0 for x in row)]
    return 0, rows, len(rows)


def saturate_rows(rows, n):
    """Basis of the saturation (R-span intersect Z^n) of the row span."""
    if not rows:
        return []
    basis = nullspace(rows, n)
    if not basis:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    # saturation = integer kernel of the kernel
    den = 1
    for vec in basis:
        for x in vec:
            den = den * x.denominator // gcd(den, x.denominator)
    ortho = [[int(x * den) for x in vec] for vec in basis]
    sat_basis = _integer_kernel(ortho, n)
    return sat_basis


def _integer_kernel(rows, n):
    """Basis of the saturated lattice {v in Z^n : rows @ v = 0}.

    Row-HNF of the transpose: with U (rows @ v = 0 iff v is a combination
    of the transform rows opposite the zero rows of H), the basis is part
    of a unimodular matrix and hence saturated.
    """
    t = [[row[i] for row in rows] for i in range(n)]
    h, u = hermite_normal_form(t)
    return [
        tuple(u[i])
        for i in range(n)
        if all(x == 0 for x in h[i])
    ]


def reduce_to_affine_lattice(points):
    """Map integer points to coordinates of the saturated direction lattice.

    Returns (reduced points, to_ambient, base) where ``to_ambient`` maps
    reduced integer coordinates back to ambient points.  The reduced
    configuration is full-dimensional in its space.
    """
    n = len(points[0])
    base = tuple(int(x) for x in points[0])
    diffs = [[int(a) - int(b) for a, b in zip(p, base)] for p in points]
    _, rows, dim = affine_basis(points)
    sat = saturate_rows(rows, n) if rows else []
    if dim == 0:
        return [tuple()] * len(points), (lambda c: base), base
    # coordinates of each diff in the saturated basis (exact, integral)
    from .lattice import solve_exact

    bt = [[sat[j][i] for j in range(dim)] for i in range(n)]  # n x dim
    reduced = []
    for dvec in diffs:
        # least squares free: solve sat^T c = dvec restricted to independent rows
        coords = _solve_rect(bt, dvec)
        if any(c.denominator != 1 for c in coords):
            raise ArithmeticError("non-integral coordinates in a saturated basis")
        reduced.append(tuple(int(c) for c in coords))

    def to_ambient(c):
        return tuple(
            base[i] + sum(int(cj) * sat[j][i] for j, cj in enumerate(c))
            for i in range(n)
        )

    return reduced, to_ambient, base


def _solve_rect(a_rows, b):
    """Solve A x = b where A is n x k of full column rank, exactly."""
    n = len(a_rows)
    k = len(a_rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a_rows, b)]
    piv_rows = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("rank deficient")
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, n):
        if aug[i][k] != 0:
            raise ValueError("inconsistent system")
    return [aug[i][k] for i in range(k)]


def _candidate_normals(arr, dim):
    """Primitive normals of hyperplanes through dim-subsets of the rows."""
    n = arr.shape[0]
    idx = np.array(list(combinations(range(n), dim)), dtype=np.intp)
    if idx.size == 0:
        return np.zeros((0, dim), dtype=np.int64)
    base = arr[idx[:, 0]]
    diffs = arr[idx[:, 1:]] - base[:, None, :]  # K x (dim-1) x dim
    if dim == 2:
        d = diffs[:, 0, :]
        normals = np.stack([-d[:, 1], d[:, 0]], axis=1)
    elif dim == 3:
        normals = np.cross(diffs[:, 0, :], diffs[:, 1, :])
    elif dim == 4:
        normals = np.empty((diffs.shape[0], 4), dtype=np.int64)
        cols = np.arange(4)
        sign = 1
        for i in range(4):
            sub = diffs[:, :, cols != i]  # K x 3 x 3
            d3 = (
                sub[:, 0, 0] * (sub[:, 1, 1] * sub[:, 2, 2] - sub[:, 1, 2] * sub[:, 2, 1])
                - sub[:, 0, 1] * (sub[:, 1, 0] * sub[:, 2, 2] - sub[:, 1, 2] * sub[:, 2, 0])
                + sub[:, 0, 2] * (sub[:, 1, 0] * sub[:, 2, 1] - sub[:, 1, 1] * sub[:, 2, 0])
            )
            normals[:, i] = sign * d3
            sign = -sign
    else:
        raise ValueError(f"unsupported dimension {dim}")
    nz = np.any(normals != 0, axis=1)
    normals = normals[nz]
    g = np.gcd.reduce(np.abs(normals), axis=1)
    normals = normals // g[:, None]
    # canonical sign: first nonzero coordinate positive
    for j in range(dim):
        col = normals[:, j]
        prev_zero = np.all(normals[:, :j] == 0, axis=1) if j else np.ones(len(normals), bool)
        flip = prev_zero & (col < 0)
        normals[flip] *= -1
    return np.unique(normals, axis=0)


def _exact_facets(uniq, dim):
    """Exact facet list for a full-dimensional configuration ``uniq``."""
    from .lattice import rank as zrank

    arr = np.array(uniq, dtype=np.int64)
    normals = _candidate_normals(arr, dim)
    if normals.shape[0] == 0:
        return []
    dots = arr @ normals.T  # n x K
    lo = dots.min(axis=0)
    hi = dots.max(axis=0)
    facets = set()
    for k in range(normals.shape[0]):
        col = dots[:, k]
        for nm, off, mask in (
            (tuple(int(x) for x in normals[k]), int(lo[k]), col == lo[k]),
            (tuple(int(-x) for x in normals[k]), int(-hi[k]), col == hi[k]),
        ):
            tight = np.flatnonzero(mask)
            if len(tight) < dim:
                continue
            diffs = arr[tight[1:]] - arr[tight[0]]
            if zrank(diffs.tolist()) == dim - 1:
                facets.add((nm, off))
    return sorted(facets)


def convex_hull_facets(points):
    """Facets of a full-dimensional integer point configuration.

    Returns (facets, vertex_indices).  Each facet is (normal, offset) with
    ``<normal, x> >= offset`` valid on the polytope and tight on the facet;
    normals are primitive inward integer vectors.  Vertex indices refer to
    the first occurrence of each extreme point in ``points``.
    """
    dim = len(points[0])
    pts = [tuple(int(x) for x in p) for p in points]
    uniq = sorted(set(pts))
    if dim == 0:
        return [], [pts.index(uniq[0])]
    if dim == 1:
        lo = min(p[0] for p in uniq)
        hi = max(p[0] for p in uniq)
        facets = [((1,), lo), ((-1,), -hi)]
        verts = sorted({pts.index((lo,)), pts.index((hi,))})
        return facets, verts

    cand = uniq
    prefiltered = False
    if len(uniq) > dim + 1:
        # float prefilter; results verified exactly below
        try:
            from scipy.spatial import ConvexHull

            arr = np.array(uniq, dtype=float)
            hull = ConvexHull(arr)
            cand = sorted(uniq[i] for i in hull.vertices)
            prefiltered = len(cand) < len(uniq)
        except Exception:
            cand = uniq

    facets = _exact_facets(cand, dim)
    if prefiltered:
        arr = np.array(uniq, dtype=np.int64)
        normal_arr = np.array([f[0] for f in facets], dtype=np.int64)
        off_arr = np.array([f[1] for f in facets], dtype=np.int64)
        if len(facets) == 0 or not (arr @ normal_arr.T >= off_arr[None, :]).all():
            facets = _exact_facets(uniq, dim)

    from .lattice import rank as zrank

    verts = []
    arr = np.array(uniq, dtype=np.int64)
    normal_arr = np.array([f[0] for f in facets], dtype=np.int64)
    off_arr = np.array([f[1] for f in facets], dtype=np.int64)
    active_mask = (arr @ normal_arr.T) == off_arr[None, :]
    for i, p in enumerate(uniq):
        active = normal_arr[active_mask[i]]
        if len(active) and zrank(active.tolist()) == dim:
            verts.append(pts.index(p))
    return facets, sorted(verts)


def triangulate(points, vertex_indices=None):
    """Pulling triangulation of a full-dimensional configuration.

    Returns a list of simplices as tuples of indices into ``points``.
    Deterministic: always pulls at the smallest vertex index.
    """
    dim = len(points[0])
    pts = [tuple(int(x) for x in p) for p in points]
    if vertex_indices is None:
        _, vertex_indices = convex_hull_facets(pts)
    vs = sorted(vertex_indices)
    if dim == 0:
        return [(vs[0],)]
    if len(vs) == dim + 1:
        return [tuple(vs)]
    facets, _ = convex_hull_facets([pts[i] for i in vs])
    vpts = [pts[i] for i in vs]
    v0 = vs[0]
    p0 = pts[v0]
    simplices = []
    for normal, off in facets:
        if sum(a * b for a, b in zip(normal, p0)) == off:
            continue
        face_idx = [vs[i] for i in range(len(vs))
                    if sum(a * b for a, b in zip(normal, vpts[i])) == off]
        fpts = [pts[i] for i in face_idx]
        red, _, _ = reduce_to_affine_lattice(fpts)
        sub = triangulate(red)
        for s in sub:
            simplices.append(tuple(sorted((v0,) + tuple(face_idx[j] for j in s))))
    return simplices


def simplex_volume(points):
    """Exact volume of a simplex given by dim+1 integer points."""
    from .lattice import det

    dim = len(points[0])
    rows = [[points[i + 1][j] - points[0][j] for j in range(dim)] for i in range(dim)]
    fact = 1
    for i in range(2, dim + 1):
        fact *= i
    return Fraction(abs(det(rows)), fact)


def volume(points):
    """Exact euclidean volume of the hull of integer points (0 if degenerate)."""
    dim = len(points[0])
    _, _, adim = affine_basis(points)
    if adim < dim:
        return Fraction(0)
    facets, verts = convex_hull_facets(points)
    tris = triangulate(points, verts)
    total = Fraction(0)
    for s in tris:
        total += simplex_volume([points[i] for i in s])
    return total
