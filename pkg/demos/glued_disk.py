"""Gluing the rim of a flat disk to itself.

Builds the five two-dimensional gluings, prints the antipodal shortcut under
net refinement, then folds an equilateral triangle into a tetrahedron.
"""

import math

from kcone import glue
from kcone.cone import ConeSpace
from kcone.dirspace import Circle

disk = ConeSpace(Circle(), 0.0, 1.0)
projective = glue.GluedSpace(disk, glue.AntipodalCircle())

print("antipodal disk: (0, 0.9) to (pi, 0.9); straight line through the apex is 1.8")
for eps, d in glue.glued_distance_refinement(projective, ([0.0], 0.9), ([math.pi], 0.9), 0.4, levels=4):
    print(f"  eps={eps:<6} distance={d.value:.6f} +{d.error:.3f}  crossings={d.crossings} nodes={d.nodes}")

print("\napex-to-rim radius of each gluing (eps = 0.1)")
names = ["circle/identity", "circle/reflection", "circle/antipodal", "interval/identity", "interval/reflection"]
for name, G in zip(names, glue.catalog_2d(0.0, 1.0, math.pi)):
    r = glue.radius_report(G, 0.1)
    print(f"  {name:<20} {r.value:.6f}  (volume {glue.glued_volume(G).value:.6f})")

s3 = math.sqrt(3)
tet = glue.PolygonGluing([[0, 0], [2, 0], [1, s3]])
print("\nside-2 triangle with each side folded at its midpoint (a regular tetrahedron of edge 1)")
for eps in (0.2, 0.05):
    mm = glue.polygon_glued_distance(tet, [1.5, s3 / 2], [0.5, s3 / 2], eps)
    vm = glue.polygon_glued_distance(tet, [0, 0], [1.5, s3 / 2], eps)
    print(f"  eps={eps:<5} midpoint-midpoint {mm.value:.6f}  vertex-midpoint {vm.value:.6f}")
