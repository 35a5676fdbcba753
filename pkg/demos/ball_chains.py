"""Volumes of chains of equal balls along a line.

Compares the exact chain formula, its second-order expansion with error
bound, and hit-or-miss Monte-Carlo.
"""

import numpy as np

from kcone import tube

print("two unit disks at distance d")
for d in (0.5, 1.0, 1.5):
    chain = tube.BallChain(2, 1.0, [d])
    print(f"  d={d}: formula {tube.tube_volume_exact(chain):.10f}  lens {tube.two_ball_union_closed_form(2, 1.0, d):.10f}")

eps = 0.2
gaps = np.full(10, 0.5 * eps * eps)
chain = tube.BallChain(3, eps, gaps)
value, bound = tube.tube_volume_expansion(chain)
exact = tube.tube_volume_exact(chain)
print(f"\n11 balls of radius {eps} in R^3, gaps eps^2/2")
print(f"  exact {exact:.10f}  expansion {value:.10f}  |error| {abs(value - exact):.2e} <= bound {bound:.2e}")
mc = tube.union_volume_mc(3, eps, tube.collinear_centers(3, gaps), 1_000_000, seed=1)
print(f"  Monte-Carlo {mc.value:.6f} +/- {mc.error:.6f}")

print("\nflat cut of the unit ball at height h, as a fraction of the half ball")
for n in (2, 3, 6):
    half = tube.euclidean_ball_volume(n, 1.0) / 2
    row = "  ".join(f"{tube.trapezoidal_ball_volume(n, 1.0, h) / half:.4f}" for h in (0.25, 0.5, 0.75, 1.0))
    print(f"  n={n}: {row}")
