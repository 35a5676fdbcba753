"""Annulus-ratio comparison and rough volume.

A round sphere against the flat model, the equality case on a cone, the
annulus-map distortion envelope and net-count dimension estimates.
"""

import math

import numpy as np

from kcone import comparison as cmp
from kcone.dirspace import Circle, Sphere

sphere = cmp.RoundSphere()
rep = cmp.bg_ratio_report(sphere, [(0.5, 1.0, 2.0), (1.0, 2.0, math.pi)], Circle(), 0.0)
print("unit sphere vs flat plane (space ratio >= model ratio)")
for r in rep.rows:
    print(f"  {r.form:<5} R=({r.R1:.2f},{r.R2:.2f},{r.R3:.2f})  space {r.space_ratio:.6f}  model {r.model_ratio:.6f}  margin {r.margin:+.6f}")

print("\nequality case: model cone against itself")
rig = cmp.rigidity_equality_check(Sphere(2), 1.0, 1.0, math.pi)
print(f"  ratios {rig.ratio_r:.15f} {rig.ratio_R:.15f}  passed={rig.passed}")

print("\nannulus map distortion, kappa = 1, r = 0.5, R = 1")
for delta in (0.1, 0.01):
    b = cmp.bilipschitz_bounds_check(Sphere(2), 1.0, 0.5, 1.0, delta, 20_000, seed=0)
    print(f"  delta={delta}: observed [{b.min_ratio:.6f}, {b.max_ratio:.6f}] within [{b.lower:.6f}, {b.upper:.6f}]")

print("\nrough volume: greedy net counts over one decade")
eps = np.geomspace(0.005, 0.05, 4)
for name, space, scale in (("unit square", cmp.EuclideanRegion.unit_square(), 1.0),
                           ("unit disk", cmp.EuclideanRegion.unit_disk(), 1.0),
                           ("circle", Circle(), 0.2)):
    rv = cmp.rough_volume_estimate(space, eps * scale, seed=0)
    print(f"  {name:<12} exponent {rv.exponent:.3f}  eps^n * count / volume {rv.ratio_to_volume:.4f}  flatness {rv.flatness:.3f}")
