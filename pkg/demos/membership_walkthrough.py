"""Three points on a line in the plane, tested against plane quartics.

A general triple of double points imposes 9 independent conditions on
quartics.  Collinear points do not: the line through them already carries
too few sections.
"""
from terracini import PointSet, membership, random_point_set
import random

collinear = PointSet([[1, 0, 0], [1, 1, 0], [1, "1/2", 0]])
v = membership(collinear, 4)
print("collinear triple:", v.rank, "of", v.conditions, "conditions, dim", v.ambient_dim)
print("  h0 =", v.h0, " h1 =", v.h1, " member:", v.member)

general = random_point_set(2, 3, random.Random(0))
w = membership(general, 4)
print("general triple:  ", w.rank, "of", w.conditions, "conditions; member:", w.member)
