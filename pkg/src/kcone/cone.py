"""The closed kappa-cone of radius R over a direction space.

A cone point is a pair (direction, t) with ``0 <= t <= R``; all points with
``t = 0`` are the apex.  Distances come from the model cosine law with the
direction distance (capped at pi) as apex angle, and ball volumes from the
radial integral ``vol(Sigma) * int_0^r sn_kappa(t)^dim dt``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .dirspace import Circle, DirectionSpace, Interval
from .errors import InvalidArgument, UnsupportedVariant
from .estimate import VolumeEstimate, mc_fraction
from .quadrature import adaptive_simpson
from .radial import as_generator, radial_distribution
from .spaceform import _cosine_law_side, _sn, comparison_angle, diameter_bound

__all__ = [
    "ConePoint",
    "ConeSpace",
    "cone_distance",
    "cone_ball_volume",
    "annulus_volume",
    "cone_sample",
    "flat_cone_geodesic",
    "base_angle_check",
    "flat_sector_volume_mc",
    "QUAD_TOL",
]

QUAD_TOL = 1e-10


class ConePoint(NamedTuple):
    """A point (or a batch of points) of a cone."""

    direction: np.ndarray
    t: float


class ConeSpace:
    """Closed cone ``C^R_kappa(sigma)``.

    For ``kappa > 0`` the radius must satisfy ``R <= pi / sqrt(kappa)``.
    :attr:`rigidity_admissible` reports whether ``R <= pi / (2 sqrt(kappa))``
    or ``R = pi / sqrt(kappa)``, the only radii for which a boundary gluing can
    keep the full cone volume.
    """

    def __init__(self, sigma: DirectionSpace, kappa: float, R: float):
        kappa = float(kappa)
        R = float(R)
        if not math.isfinite(kappa):
            raise InvalidArgument("curvature must be finite")
        if not (R > 0 and math.isfinite(R)):
            raise InvalidArgument(f"cone radius must be positive and finite, got {R}")
        bound = diameter_bound(kappa)
        if R > bound * (1 + 1e-12):
            raise InvalidArgument(f"radius {R} exceeds pi/sqrt(kappa) = {bound}")
        self.sigma = sigma
        self.kappa = kappa
        self.R = min(R, bound)

    def __repr__(self):
        return f"ConeSpace(sigma={self.sigma!r}, kappa={self.kappa!r}, R={self.R!r})"

    @property
    def dim(self) -> int:
        return self.sigma.dim + 1

    @property
    def rigidity_admissible(self) -> bool:
        if self.kappa <= 0:
            return True
        bound = diameter_bound(self.kappa)
        return self.R <= 0.5 * bound * (1 + 1e-12) or abs(self.R - bound) <= 1e-12 * bound

    @property
    def apex(self) -> ConePoint:
        return ConePoint(self.sigma.candidates(1.0)[0], 0.0)

    def point(self, direction, t) -> ConePoint:
        """Validated cone point; ``t`` may be an array matching ``direction``."""
        direction = self.sigma.as_points(direction)
        t = np.asarray(t, dtype=float)
        if np.any(~np.isfinite(t)) or np.any(t < 0) or np.any(t > self.R * (1 + 1e-12)):
            raise InvalidArgument(f"radial coordinate must lie in [0, {self.R}]")
        t = np.minimum(t, self.R)
        return ConePoint(direction, float(t) if t.ndim == 0 else t)

    # -- metric -------------------------------------------------------------
    def _distance(self, du, tu, dv, tv):
        tu = np.asarray(tu, dtype=float)
        tv = np.asarray(tv, dtype=float)
        angle = np.minimum(self.sigma._distance(du, dv), math.pi)
        d = _cosine_law_side(self.kappa, tu, tv, angle)
        # radial pairs are exact: apex, equal directions, the far pole
        radial = (tu == 0) | (tv == 0) | (angle == 0)
        d = np.where(radial, np.abs(tu - tv), d)
        if self.kappa > 0:
            top = diameter_bound(self.kappa)
            d = np.where(tu >= top, top - tv, d)
            d = np.where(tv >= top, top - tu, d)
        return d

    def distance(self, x: ConePoint, y: ConePoint):
        x = self.point(*x)
        y = self.point(*y)
        out = self._distance(x.direction, x.t, y.direction, y.t)
        return float(out) if np.ndim(out) == 0 else out

    # -- volume -------------------------------------------------------------
    def _radial_integral(self, a: float, b: float, tol: float):
        m = self.sigma.dim
        kappa = self.kappa
        return adaptive_simpson(lambda t: float(_sn(kappa, t)) ** m, a, b, tol=tol)

    def annulus_volume(self, r_inner: float, r_outer: float, tol: float = QUAD_TOL) -> VolumeEstimate:
        """Volume of ``{r_inner < t <= r_outer}`` by one quadrature on ``[r_inner, r_outer]``."""
        r_inner = float(r_inner)
        r_outer = float(r_outer)
        if not (0 <= r_inner <= r_outer <= self.R * (1 + 1e-12)):
            raise InvalidArgument(f"need 0 <= r_inner <= r_outer <= R = {self.R}")
        r_outer = min(r_outer, self.R)
        vol_sigma = self.sigma.volume()
        q = self._radial_integral(r_inner, r_outer, tol / max(vol_sigma, 1.0))
        return VolumeEstimate(vol_sigma * q.value, vol_sigma * q.error + 1e-15 * abs(vol_sigma * q.value), "quadrature")

    def ball_volume(self, r: float, tol: float = QUAD_TOL) -> VolumeEstimate:
        return self.annulus_volume(0.0, r, tol)

    # -- sampling -----------------------------------------------------------
    def sample(self, seed=None, size=None) -> ConePoint:
        """Points distributed by the cone's Hausdorff measure."""
        rng = as_generator(seed)
        dirs = self.sigma.sample(rng, size)
        radii = radial_distribution(self.kappa, self.sigma.dim, 0.0, self.R).sample(rng, size)
        return ConePoint(dirs, float(radii) if np.ndim(radii) == 0 else radii)

    def ball_volume_mc(self, r: float, samples: int, seed=None, workers: int = 1) -> VolumeEstimate:
        """Monte-Carlo ball volume: total volume times the fraction of samples with ``t <= r``."""
        total = self.ball_volume(self.R).value

        def hits(rng, k):
            return self.sample(rng, k).t <= r

        p, se = mc_fraction(hits, samples, seed, workers=workers)
        return VolumeEstimate(total * p, total * se, "mc", int(samples))

    def to_spec(self) -> dict:
        return {"kind": "cone", "kappa": self.kappa, "R": self.R, "sigma": self.sigma.to_spec()}


def cone_distance(C: ConeSpace, x: ConePoint, y: ConePoint):
    return C.distance(x, y)


def cone_ball_volume(C: ConeSpace, r: float) -> VolumeEstimate:
    return C.ball_volume(r)


def annulus_volume(C: ConeSpace, r: float, R2: float) -> VolumeEstimate:
    return C.annulus_volume(r, R2)


def cone_sample(C: ConeSpace, seed=None, size=None) -> ConePoint:
    return C.sample(seed, size)


# -- flat cones over circles -------------------------------------------------


def _require_flat_circle(C: ConeSpace) -> Circle:
    if C.kappa != 0.0 or not isinstance(C.sigma, Circle):
        raise UnsupportedVariant("development needs a flat cone (kappa = 0) over a circle")
    return C.sigma


def _signed_gap(circle: Circle, a: float, b: float) -> float:
    """Signed arc from a to b in (-L/2, L/2]."""
    L = circle.length
    g = math.fmod(b - a, L)
    if g > 0.5 * L:
        g -= L
    elif g <= -0.5 * L:
        g += L
    return g


def flat_cone_geodesic(C: ConeSpace, x: ConePoint, y: ConePoint, interior: int = 10):
    """Shortest path between two points of a flat cone over a circle.

    Unfolds the sector between the two directions into the plane.  When the
    apex angle is below pi the path is the straight planar segment; otherwise
    it runs radially in to the apex and out again.  Returns
    ``(path, length)`` where ``path`` lists ``interior + 2`` cone points from
    ``x`` to ``y`` and ``length`` is the cone distance.
    """
    circle = _require_flat_circle(C)
    x = C.point(*x)
    y = C.point(*y)
    ax, tx = float(x.direction[0]), float(x.t)
    ay, ty = float(y.direction[0]), float(y.t)
    if tx == 0 and ty == 0:
        raise InvalidArgument("both endpoints are the apex")
    length = float(C._distance(x.direction, tx, y.direction, ty))
    gap = _signed_gap(circle, ax, ay)
    delta = abs(gap)
    s = np.linspace(0.0, 1.0, interior + 2)
    if delta < math.pi and tx > 0 and ty > 0:
        X = np.array([tx, 0.0])
        Y = np.array([ty * math.cos(delta), ty * math.sin(delta)])
        P = (1 - s)[:, None] * X + s[:, None] * Y
        rho = np.hypot(P[:, 0], P[:, 1])
        alpha = np.arctan2(P[:, 1], P[:, 0])
        sign = 1.0 if gap >= 0 else -1.0
        dirs = circle.wrap(ax + sign * alpha)
        rho[0], rho[-1] = tx, ty
        dirs[0], dirs[-1] = ax, ay
    else:
        # through the apex: arc-length parameter along t_x + t_y
        u = s * (tx + ty)
        rho = np.where(u <= tx, tx - u, u - tx)
        dirs = np.where(u <= tx, ax, ay)
    path = [ConePoint(np.array([d]), float(r)) for d, r in zip(dirs, rho)]
    return path, length


def base_angle_check(C: ConeSpace, a: ConePoint, b: ConePoint, step: float = 1e-4) -> float:
    """Angle at ``a`` between the segment to the apex and the geodesic to ``b``.

    The angle is estimated from first variation: central differences of
    ``|ab|`` when ``a`` moves radially (giving the cosine) and along its
    circle of radius ``t_a`` (giving the sine).  Returns the absolute
    difference from the model comparison angle with sides ``|pa|``, ``|ab|``
    and opposite side ``|pb|``.
    """
    circle = _require_flat_circle(C)
    a = C.point(*a)
    b = C.point(*b)
    ta, tb = float(a.t), float(b.t)
    if ta == 0 or tb == 0:
        raise InvalidArgument("base angle needs both points off the apex")
    da, db = float(a.direction[0]), float(b.direction[0])
    delta = abs(_signed_gap(circle, da, db))
    if delta >= math.pi:
        raise UnsupportedVariant("geodesic passes through the apex")
    if not (step < ta and ta + step <= C.R):
        raise InvalidArgument("finite-difference step leaves the cone")
    ab = float(C._distance(a.direction, ta, b.direction, tb))
    if ab == 0:
        raise InvalidArgument("points coincide")
    if delta == 0:
        estimate = 0.0 if tb < ta else math.pi
    else:

        def length(direction, t):
            return flat_cone_geodesic(C, ConePoint(np.array([direction]), t), b, interior=0)[1]

        radial = (length(da, ta + step) - length(da, ta - step)) / (2 * step)
        dphi = step / ta
        tangential = (length(da + dphi, ta) - length(da - dphi, ta)) / (2 * step)
        estimate = math.atan2(abs(tangential), radial)
    return abs(estimate - comparison_angle(0.0, ta, ab, tb))


def flat_sector_volume_mc(C: ConeSpace, samples: int, seed=None, workers: int = 1) -> VolumeEstimate:
    """Area of a flat cone over a circle or interval, by hit-or-miss in ``[-R, R]^2``.

    The cone is developed as a planar sector of opening angle equal to the
    length of the direction space; no cone formula is involved.
    """
    if C.kappa != 0.0 or not isinstance(C.sigma, (Circle, Interval)):
        raise UnsupportedVariant("planar development needs a flat cone over a circle or interval")
    opening = C.sigma.length if isinstance(C.sigma, Circle) else C.sigma.theta
    R = C.R

    def hits(rng, k):
        p = rng.uniform(-R, R, (k, 2))
        ang = np.mod(np.arctan2(p[:, 1], p[:, 0]), 2 * math.pi)
        return (np.hypot(p[:, 0], p[:, 1]) <= R) & (ang < opening)

    p, se = mc_fraction(hits, samples, seed, workers=workers)
    box = 4.0 * R * R
    return VolumeEstimate(box * p, box * se, "mc", int(samples))
