import random

import pytest

from toricarith.cones import Fan
from toricarith.lattice import DualVector, LatticeVector
from toricarith.polytopes import LatticePolytope


@pytest.fixture
def p2_fan():
    """Projective plane: rays e1, e2, -e1-e2."""
    return Fan(
        [LatticeVector([1, 0]), LatticeVector([0, 1]), LatticeVector([-1, -1])],
        [[0, 1], [1, 2], [0, 2]],
    )


@pytest.fixture
def p1xp1_fan():
    """Product of two projective lines: rays +-e1, +-e2."""
    return Fan(
        [
            LatticeVector([1, 0]),
            LatticeVector([-1, 0]),
            LatticeVector([0, 1]),
            LatticeVector([0, -1]),
        ],
        [[0, 2], [0, 3], [1, 2], [1, 3]],
    )


@pytest.fixture
def p3_fan():
    """Projective 3-space: rays e1, e2, e3, -e1-e2-e3."""
    return Fan(
        [
            LatticeVector([1, 0, 0]),
            LatticeVector([0, 1, 0]),
            LatticeVector([0, 0, 1]),
            LatticeVector([-1, -1, -1]),
        ],
        [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
    )


def random_polytope(rng: random.Random, dim: int, coord_max: int = 3, points=None):
    """Random full-dimensional lattice polytope with small coordinates."""
    if points is None:
        points = rng.randrange(dim + 1, dim + 5)
    while True:
        pts = [
            DualVector([rng.randrange(0, coord_max + 1) for _ in range(dim)])
            for _ in range(points)
        ]
        K = LatticePolytope(pts)
        if K.is_full_dimensional():
            return K


def unit_simplex(dim: int) -> LatticePolytope:
    verts = [DualVector([0] * dim)]
    for i in range(dim):
        verts.append(DualVector([1 if j == i else 0 for j in range(dim)]))
    return LatticePolytope(verts)
