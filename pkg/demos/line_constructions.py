"""Scan the degree m for members supported on a line of P^n.

For each m the smallest k with 2k > m + 1 is used; the construction is
refused when k(n+1) points would already fill the ambient space.
"""
from terracini.constructions import construct_on_rational_curve, thresholds
from terracini.errors import RefusalError

for n in (2, 3):
    for m in range(2, 8):
        th = thresholds(n, m, 1)
        try:
            ex = construct_on_rational_curve(n, m, seed=m)
        except RefusalError as exc:
            print(f"n={n} m={m}: refused ({exc})")
            continue
        v = ex.verdict
        print(f"n={n} m={m} k={th.minimal_k}: rank {v.rank}/{v.conditions} in dim "
              f"{v.ambient_dim}, curve rank {ex.curve_rank}/{ex.curve_conditions}")
