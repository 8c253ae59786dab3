"""Plane cubic y^2 = x^3 + x + 1 over F_10007, re-embedded by degree d' forms.

Even d': choose 3d'/2 points whose group sum is 2-torsion and the double
points drop rank by one.  Odd d': random point sets always reach full rank.
"""
from terracini.constructions import construct_elliptic_even, probe_emptiness

for dp in (2, 4):
    ex = construct_elliptic_even(dp, seed=3)
    print(f"d'={dp}: k={ex.parameters['k']} rank {ex.curve_rank} of "
          f"{ex.curve_conditions} conditions, h0={ex.verdict.h0} h1={ex.verdict.h1}")

for dp in (3, 5):
    k = (3 * dp + 1) // 2
    r = probe_emptiness("elliptic-odd", dp, k, 20, seed=3)
    print(f"d'={dp}: k={k} histogram {r.histogram}")
