#!/usr/bin/env python3
"""Mixed volumes through the intersection recursion versus the
inclusion-exclusion oracle on random instances.

Usage: demo_mixed_volume.py [count] [dim] [seed]
"""

import random
import sys
import time

from toricarith.intersection import mixed_volume
from toricarith.lattice import DualVector
from toricarith.polytopes import LatticePolytope, mixed_volume_oracle


def random_polytope(rng, dim, coord_max=3):
    while True:
        pts = [
            DualVector([rng.randrange(0, coord_max + 1) for _ in range(dim)])
            for _ in range(dim + rng.randrange(1, 5))
        ]
        K = LatticePolytope(pts)
        if K.is_full_dimensional():
            return K


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 25
    dim = int(sys.argv[2]) if len(sys.argv) > 2 else 2
    seed = int(sys.argv[3]) if len(sys.argv) > 3 else 0
    rng = random.Random(seed)
    t0 = time.time()
    for i in range(count):
        polys = [random_polytope(rng, dim) for _ in range(dim)]
        via_weights = mixed_volume(polys)
        via_oracle = mixed_volume_oracle(polys)
        status = "ok" if via_weights == via_oracle else "MISMATCH"
        print(f"[{i:3d}] V = {via_weights}  ({status})")
        if via_weights != via_oracle:
            raise SystemExit(f"disagreement: {via_weights} vs {via_oracle}")
    print(f"{count} instances in dimension {dim}: {time.time() - t0:.2f}s, all equal")


if __name__ == "__main__":
    main()
