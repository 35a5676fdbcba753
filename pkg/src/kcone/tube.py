"""Euclidean volumes of trapezoidal balls and chains of overlapping balls.

A chain of ``N + 1`` balls of radius ``eps`` whose consecutive centres are
``gaps[i]`` apart has union volume

    vol B_eps(R^n) + 2 eps vol B_eps(R^(n-1)) * sum_i int_{theta_i}^{pi/2} sin^n t dt,

with ``cos theta_i = gaps[i] / (2 eps)``.  The formula is exact whenever each
ball meets only its chain neighbours inside its own Voronoi cell, which holds
for every collinear chain and for chains whose non-consecutive balls are
disjoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from .errors import ExpansionDomainError, InvalidArgument
from .estimate import VolumeEstimate, mc_fraction
from .spaceform import sn_power_integral

__all__ = [
    "BallChain",
    "euclidean_ball_volume",
    "sin_power_tail",
    "trapezoidal_ball_volume",
    "tube_volume_exact",
    "tube_volume_expansion",
    "expansion_constant",
    "union_volume_mc",
    "collinear_centers",
    "chain_overlap_report",
    "two_ball_union_closed_form",
]


def euclidean_ball_volume(n: int, r: float) -> float:
    """Volume of the radius-``r`` ball in ``R^n``.

    >>> round(euclidean_ball_volume(2, 1.0), 12) == round(math.pi, 12)
    True
    """
    n = int(n)
    if n < 0:
        raise InvalidArgument("dimension must be non-negative")
    if r < 0:
        raise InvalidArgument("radius must be non-negative")
    if n == 0:
        return 1.0
    return float(math.exp(0.5 * n * math.log(math.pi) - gammaln(0.5 * n + 1.0)) * r ** n)


def sin_power_tail(n: int, theta: float) -> float:
    """``int_theta^{pi/2} sin^n t dt`` in closed form."""
    if not 0 <= theta <= 0.5 * math.pi * (1 + 1e-15):
        raise InvalidArgument("theta must lie in [0, pi/2]")
    return sn_power_integral(1.0, n, min(theta, 0.5 * math.pi), 0.5 * math.pi)


def trapezoidal_ball_volume(n: int, r: float, h: float) -> float:
    """Volume of the part of a half ``n``-ball of radius ``r`` within height ``h`` of its base.

    Equals ``r * vol B_r(R^(n-1)) * int_theta^{pi/2} sin^n t dt`` with
    ``r cos theta = h``.
    """
    n = int(n)
    if n < 1:
        raise InvalidArgument("dimension must be >= 1")
    if not (r >= 0 and h >= 0):
        raise InvalidArgument("radius and height must be non-negative")
    if h > r * (1 + 1e-15):
        raise InvalidArgument(f"height {h} exceeds radius {r}")
    if r == 0:
        return 0.0
    theta = math.acos(min(h / r, 1.0))
    return r * euclidean_ball_volume(n - 1, r) * sin_power_tail(n, theta)


@dataclass(frozen=True)
class BallChain:
    """Chain of ``len(gaps) + 1`` radius-``epsilon`` balls in ``R^n``.

    Only consecutive gaps are stored.  That consecutive balls are the only
    ones that meet is a declared assumption; it is not checked for an abstract
    gap list (see :func:`chain_overlap_report` for explicit centres).
    """

    n: int
    epsilon: float
    gaps: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gaps", tuple(float(g) for g in self.gaps))
        if int(self.n) < 2:
            raise InvalidArgument("ball chains need dimension n >= 2")
        if not self.epsilon > 0:
            raise InvalidArgument("epsilon must be positive")
        for g in self.gaps:
            if not 0 < g < 2 * self.epsilon:
                raise InvalidArgument(f"gap {g} outside (0, 2 eps) = (0, {2 * self.epsilon})")

    @property
    def count(self) -> int:
        return len(self.gaps) + 1


def tube_volume_exact(chain: BallChain) -> float:
    n, eps = chain.n, chain.epsilon
    total = sum(sin_power_tail(n, math.acos(g / (2 * eps))) for g in chain.gaps)
    return euclidean_ball_volume(n, eps) + 2 * eps * euclidean_ball_volume(n - 1, eps) * total


def _third_derivative(n: int, u):
    # G(u) = int_{acos u}^{pi/2} sin^n, G'(u) = (1 - u^2)^((n-1)/2)
    w = 1.0 - u * u
    return -(n - 1) * w ** ((n - 3) / 2) + (n - 1) * (n - 3) * u * u * w ** ((n - 5) / 2)


def expansion_constant(n: int, u_max: float, grid: int = 2001) -> float:
    """``C`` with ``|exact - first order| <= C eps^(n+1) sum(gaps)`` when gaps <= eps^2.

    ``C = vol B_1(R^(n-1)) * max |G'''| / 24`` with ``G'''`` maximized on a
    grid over ``[0, u_max]``, ``u = gap / (2 eps)``.
    """
    u = np.linspace(0.0, u_max, grid)
    m = float(np.max(np.abs(_third_derivative(n, u))))
    return euclidean_ball_volume(n - 1, 1.0) * m / 24.0


def tube_volume_expansion(chain: BallChain) -> tuple[float, float]:
    """First-order tube volume and a bound on its distance from the exact value."""
    n, eps = chain.n, chain.epsilon
    for g in chain.gaps:
        if g > eps * eps * (1 + 1e-12):
            raise ExpansionDomainError(f"gap {g} exceeds eps^2 = {eps * eps}")
    total = sum(chain.gaps)
    value = euclidean_ball_volume(n, eps) + euclidean_ball_volume(n - 1, eps) * total
    if not chain.gaps:
        return value, 0.0
    c = expansion_constant(n, max(chain.gaps) / (2 * eps))
    return value, c * eps ** (n + 1) * total


def collinear_centers(n: int, gaps: Sequence[float]) -> np.ndarray:
    """Centres on the first coordinate axis with the given consecutive gaps."""
    xs = np.concatenate([[0.0], np.cumsum(np.asarray(gaps, dtype=float))])
    out = np.zeros((len(xs), int(n)))
    out[:, 0] = xs
    return out


def chain_overlap_report(centers, eps: float) -> dict:
    """Check the hypotheses under which the chain formula is exact.

    Reports whether the centres are collinear, the list of non-consecutive
    pairs whose balls meet, whether some triple of balls has a common point
    (tested at the pairwise lens centres) and the overall verdict
    ``formula_exact``.
    """
    c = np.asarray(centers, dtype=float)
    k = len(c)
    if k >= 3:
        d = c - c[0]
        rank = np.linalg.matrix_rank(d, tol=1e-9 * max(1.0, float(np.max(np.abs(d)))))
    else:
        rank = 1
    collinear = rank <= 1
    touching = []
    for i in range(k):
        for j in range(i + 2, k):
            if np.linalg.norm(c[i] - c[j]) < 2 * eps:
                touching.append((i, j))
    triple = False
    for i, j in touching:
        mid = 0.5 * (c[i] + c[j])
        others = np.linalg.norm(c - mid, axis=1) < eps
        others[[i, j]] = False
        triple = triple or bool(np.any(others))
    return {
        "collinear": bool(collinear),
        "nonconsecutive_overlaps": touching,
        "triple_intersection": triple,
        "formula_exact": bool(collinear or not touching),
    }


def union_volume_mc(n: int, eps: float, centers, samples: int, seed=None, workers: int = 1) -> VolumeEstimate:
    """Hit-or-miss volume of a union of radius-``eps`` balls over its bounding box."""
    c = np.asarray(centers, dtype=float).reshape(-1, int(n))
    lo = c.min(axis=0) - eps
    hi = c.max(axis=0) + eps
    box = float(np.prod(hi - lo))
    eps2 = eps * eps

    def hits(rng, k):
        p = rng.uniform(lo, hi, (k, int(n)))
        inside = np.zeros(k, dtype=bool)
        for x in c:
            inside |= np.sum((p - x) ** 2, axis=1) < eps2
        return inside

    p, se = mc_fraction(hits, samples, seed, workers=workers)
    return VolumeEstimate(box * p, box * se, "mc", int(samples))


def two_ball_union_closed_form(n: int, eps: float, d: float) -> float:
    """Union volume of two radius-``eps`` balls ``d`` apart (``n`` = 2 or 3)."""
    if not 0 <= d:
        raise InvalidArgument("distance must be non-negative")
    if d >= 2 * eps:
        return 2 * euclidean_ball_volume(n, eps)
    if n == 2:
        lens = 2 * eps * eps * math.acos(d / (2 * eps)) - 0.5 * d * math.sqrt(4 * eps * eps - d * d)
        return 2 * math.pi * eps * eps - lens
    if n == 3:
        lens = math.pi * (4 * eps + d) * (2 * eps - d) ** 2 / 12.0
        return 2 * euclidean_ball_volume(3, eps) - lens
    raise InvalidArgument("closed-form lens only for n = 2 or 3")
