"""Double points in general position in the plane.

Only two cases in this range fall short of the expected rank: two points
on conics and five points on quartics.
"""
from math import comb

from terracini import ah_probe

for d in (2, 3, 4, 5):
    M = comb(d + 2, 2)
    for k in range(1, (M + 3) // 3 + 1):
        r = ah_probe(2, d, k, 10, rng_seed=0)
        mark = "  <- defective" if r.defective else ""
        print(f"d={d} k={k}: max rank {r.max_rank}, expected {r.expected_rank}{mark}")
