"""Model direction spaces: circles, intervals, round spheres, spherical
suspensions and finite metric nets.

Points are numpy arrays whose last axis holds the coordinates of one point
(``coord_dim`` numbers).  A circle point is its arc-length coordinate, an
interval point its position, a sphere point a unit vector, a suspension point
the inner coordinates followed by the polar angle, and a finite-net point its
row index stored as a float.  All distance methods broadcast over leading
axes.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .errors import InvalidArgument, UnsupportedMeasure
from .radial import as_generator, radial_distribution
from .spaceform import _cosine_law_side, sn_power_integral

__all__ = [
    "DirectionSpace",
    "Circle",
    "Interval",
    "Sphere",
    "Suspension",
    "FiniteNet",
    "dir_distance",
    "dir_volume",
    "dir_sample",
    "dir_net",
    "greedy_farthest_points",
]


def greedy_farthest_points(candidates, distance, stop_radius: float):
    """Farthest-point insertion over ``candidates`` starting at index 0.

    Returns the selected indices and the final covering radius of the
    selection over the candidate set.  Points are added until every
    candidate is within ``stop_radius`` of the selection, so consecutive
    picks are more than ``stop_radius`` apart.
    """
    n = len(candidates)
    chosen = [0]
    mind = distance(candidates, candidates[0])
    while True:
        far = int(np.argmax(mind))
        if mind[far] <= stop_radius:
            return np.array(chosen), float(mind[far])
        chosen.append(far)
        mind = np.minimum(mind, distance(candidates, candidates[far]))
        if len(chosen) > n:  # pragma: no cover - guarded by the metric axioms
            raise RuntimeError("farthest-point insertion failed to terminate")


class DirectionSpace:
    """Base class.  Subclasses are immutable after construction."""

    dim: int = 0
    coord_dim: int = 1
    has_measure: bool = True

    # -- points -------------------------------------------------------------
    def as_points(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if u.ndim == 0:
            u = u[None]
        if u.shape[-1] != self.coord_dim:
            raise InvalidArgument(
                f"{type(self).__name__} points have {self.coord_dim} coordinate(s), got shape {u.shape}"
            )
        self._check_domain(u)
        return u

    def _check_domain(self, u: np.ndarray) -> None:
        pass

    # -- metric -------------------------------------------------------------
    def distance(self, u, v):
        """Distance in ``[0, pi]`` between (arrays of) points."""
        return self._distance(self.as_points(u), self.as_points(v))

    def _distance(self, u, v):  # pragma: no cover - abstract
        raise NotImplementedError

    # -- measure ------------------------------------------------------------
    def volume(self) -> float:
        raise UnsupportedMeasure(f"{type(self).__name__} carries no canonical measure")

    def sample(self, seed=None, size=None):
        raise UnsupportedMeasure(f"{type(self).__name__} carries no canonical measure")

    # -- nets ---------------------------------------------------------------
    def candidates(self, fill: float) -> np.ndarray:  # pragma: no cover - abstract
        """Finite point set whose covering radius in this space is at most ``fill``."""
        raise NotImplementedError

    def net(self, eps: float) -> np.ndarray:
        """Deterministic ``eps``-net: covering radius <= eps, separation >= eps/2."""
        eps = _positive(eps)
        fill = 0.25 * eps
        cand = self.candidates(fill)
        idx, _ = greedy_farthest_points(cand, self._distance, eps - fill)
        return cand[idx]

    def net_covering_radius(self, eps: float) -> float:
        """Guaranteed covering radius of :meth:`net` at this ``eps``."""
        return float(eps)

    def to_spec(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError


def _positive(eps) -> float:
    eps = float(eps)
    if not eps > 0 or not math.isfinite(eps):
        raise InvalidArgument(f"net scale must be positive and finite, got {eps}")
    return eps


class Circle(DirectionSpace):
    """Circle of total length ``length = 2 theta`` with ``0 < theta <= pi``."""

    dim = 1
    coord_dim = 1

    def __init__(self, length: float = 2 * math.pi):
        length = float(length)
        if not 0 < length <= 2 * math.pi * (1 + 1e-12):
            raise InvalidArgument(f"circle length must be in (0, 2 pi], got {length}")
        self.length = min(length, 2 * math.pi)

    @property
    def theta(self) -> float:
        return 0.5 * self.length

    def __repr__(self):
        return f"Circle(length={self.length!r})"

    def wrap(self, u):
        return np.mod(u, self.length)

    def _distance(self, u, v):
        d = np.mod(np.abs(u[..., 0] - v[..., 0]), self.length)
        return np.minimum(d, self.length - d)

    def volume(self):
        return self.length

    def sample(self, seed=None, size=None):
        rng = as_generator(seed)
        shape = (1,) if size is None else (size, 1) if np.ndim(size) == 0 else tuple(size) + (1,)
        return rng.uniform(0.0, self.length, shape)

    def _count(self, eps):
        return max(1, math.ceil(self.length / eps - 1e-12))

    def net(self, eps):
        m = self._count(_positive(eps))
        return (np.arange(m) * (self.length / m))[:, None]

    def net_covering_radius(self, eps):
        return 0.5 * self.length / self._count(_positive(eps))

    def candidates(self, fill):
        return self.net(2 * fill)

    def to_spec(self):
        return {"kind": "circle", "length": self.length}


class Interval(DirectionSpace):
    """Segment ``[0, theta]`` with ``0 < theta <= pi``."""

    dim = 1
    coord_dim = 1

    def __init__(self, theta: float):
        theta = float(theta)
        if not 0 < theta <= math.pi * (1 + 1e-12):
            raise InvalidArgument(f"interval length must be in (0, pi], got {theta}")
        self.theta = min(theta, math.pi)

    def __repr__(self):
        return f"Interval(theta={self.theta!r})"

    def _check_domain(self, u):
        if np.any(u[..., 0] < -1e-12) or np.any(u[..., 0] > self.theta + 1e-12):
            raise InvalidArgument("interval point out of range")

    def _distance(self, u, v):
        return np.abs(u[..., 0] - v[..., 0])

    def volume(self):
        return self.theta

    def sample(self, seed=None, size=None):
        rng = as_generator(seed)
        shape = (1,) if size is None else (size, 1) if np.ndim(size) == 0 else tuple(size) + (1,)
        return rng.uniform(0.0, self.theta, shape)

    def _cells(self, eps):
        return max(1, math.ceil(self.theta / eps - 1e-12))

    def net(self, eps):
        return np.linspace(0.0, self.theta, self._cells(_positive(eps)) + 1)[:, None]

    def net_covering_radius(self, eps):
        return 0.5 * self.theta / self._cells(_positive(eps))

    def candidates(self, fill):
        return self.net(2 * fill)

    def to_spec(self):
        return {"kind": "interval", "theta": self.theta}


def sphere_area(m: int) -> float:
    """Area of the unit ``m``-sphere in ``R^(m+1)``."""
    return float(2.0 * math.exp(0.5 * (m + 1) * math.log(math.pi) - gammaln(0.5 * (m + 1))))


class Sphere(DirectionSpace):
    """Unit round sphere ``S^dim`` with its angular metric."""

    def __init__(self, dim: int):
        dim = int(dim)
        if dim < 0:
            raise InvalidArgument("sphere dimension must be >= 0")
        self.dim = dim
        self.coord_dim = dim + 1

    def __repr__(self):
        return f"Sphere(dim={self.dim})"

    def _check_domain(self, u):
        if np.any(np.abs(np.linalg.norm(u, axis=-1) - 1.0) > 1e-9):
            raise InvalidArgument("sphere points must be unit vectors")

    def _distance(self, u, v):
        return 2.0 * np.arctan2(np.linalg.norm(u - v, axis=-1), np.linalg.norm(u + v, axis=-1))

    def volume(self):
        return sphere_area(self.dim)

    def sample(self, seed=None, size=None):
        rng = as_generator(seed)
        shape = (self.coord_dim,) if size is None else (size, self.coord_dim) if np.ndim(size) == 0 else tuple(size) + (self.coord_dim,)
        g = rng.standard_normal(shape)
        return g / np.linalg.norm(g, axis=-1, keepdims=True)

    def candidates(self, fill):
        # grid on the faces of the cube [-1, 1]^D, projected radially; the
        # projection is 1-Lipschitz so the angular fill is <= (pi/4) h sqrt(D-1)
        d = self.coord_dim
        if d == 1:
            return np.array([[1.0], [-1.0]])
        h = 4.0 * fill / (math.pi * math.sqrt(d - 1))
        k = max(1, math.ceil(2.0 / h))
        ticks = np.linspace(-1.0, 1.0, k + 1)
        mesh = np.stack(np.meshgrid(*([ticks] * (d - 1)), indexing="ij"), axis=-1).reshape(-1, d - 1)
        faces = []
        for axis in range(d):
            for sign in (-1.0, 1.0):
                pts = np.insert(mesh, axis, sign, axis=1)
                faces.append(pts)
        pts = np.unique(np.round(np.concatenate(faces), 12), axis=0)
        return pts / np.linalg.norm(pts, axis=1, keepdims=True)

    def to_spec(self):
        return {"kind": "sphere", "dim": self.dim}


class Suspension(DirectionSpace):
    """Spherical suspension: the curvature-1 cone of radius pi over ``inner``.

    Points are ``(inner coordinates..., polar angle)``; polar angles 0 and pi
    are the two poles, where the inner coordinates are ignored.
    """

    def __init__(self, inner: DirectionSpace):
        self.inner = inner
        self.dim = inner.dim + 1
        self.coord_dim = inner.coord_dim + 1
        self.has_measure = inner.has_measure

    def __repr__(self):
        return f"Suspension({self.inner!r})"

    def point(self, inner_point, polar: float) -> np.ndarray:
        return np.concatenate([np.atleast_1d(np.asarray(inner_point, dtype=float)), [float(polar)]])

    def _check_domain(self, u):
        polar = u[..., -1]
        if np.any(polar < -1e-12) or np.any(polar > math.pi * (1 + 1e-12)):
            raise InvalidArgument("suspension polar angle must lie in [0, pi]")

    def _distance(self, u, v):
        inner = np.minimum(self.inner._distance(u[..., :-1], v[..., :-1]), math.pi)
        pu = np.clip(u[..., -1], 0.0, math.pi)
        pv = np.clip(v[..., -1], 0.0, math.pi)
        return _cosine_law_side(1.0, pu, pv, inner)

    def volume(self):
        return self.inner.volume() * sn_power_integral(1.0, self.inner.dim, 0.0, math.pi)

    def sample(self, seed=None, size=None):
        rng = as_generator(seed)
        inner = self.inner.sample(rng, size)
        polar = radial_distribution(1.0, self.inner.dim, 0.0, math.pi).sample(rng, size)
        return np.concatenate([inner, np.asarray(polar)[..., None]], axis=-1)

    def candidates(self, fill):
        inner = self.inner.candidates(0.5 * fill)
        k = max(2, math.ceil(math.pi / fill))
        polar = np.linspace(0.0, math.pi, k + 1)[1:-1]
        body = np.concatenate(
            [np.repeat(inner, len(polar), axis=0), np.tile(polar, len(inner))[:, None]], axis=1
        )
        poles = np.array([np.concatenate([inner[0], [0.0]]), np.concatenate([inner[0], [math.pi]])])
        return np.concatenate([poles, body])

    def to_spec(self):
        return {"kind": "suspension", "inner": self.inner.to_spec()}


class FiniteNet(DirectionSpace):
    """Finite metric space given by a distance matrix.

    The matrix is checked for symmetry, zero diagonal, the triangle
    inequality and entries <= pi.  Whether the space is a limit of curvature
    >= 1 spaces cannot be checked; such inputs are marked ``trusted = False``.
    """

    dim = 0
    coord_dim = 1
    has_measure = False

    def __init__(self, matrix, points=None, tol: float = 1e-12):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise InvalidArgument("distance matrix must be square and non-empty")
        if np.any(~np.isfinite(m)) or np.any(m < 0):
            raise InvalidArgument("distances must be finite and non-negative")
        if np.max(np.abs(m - m.T)) > tol:
            raise InvalidArgument("distance matrix must be symmetric")
        if np.max(np.abs(np.diag(m))) > tol:
            raise InvalidArgument("distance matrix must have zero diagonal")
        if np.max(m) > math.pi + tol:
            raise InvalidArgument("finite-net distances must not exceed pi")
        # d(i,k) <= d(i,j) + d(j,k) for all i, j, k
        excess = m[:, None, :] - (m[:, :, None] + m[None, :, :])
        if np.max(excess) > tol * max(1.0, float(np.max(m))):
            raise InvalidArgument("distance matrix violates the triangle inequality")
        self.matrix = m
        self.labels = None if points is None else list(points)
        self.trusted = False

    def __len__(self):
        return self.matrix.shape[0]

    def __repr__(self):
        return f"FiniteNet(n={len(self)})"

    def _check_domain(self, u):
        i = u[..., 0]
        if np.any(i != np.round(i)) or np.any(i < 0) or np.any(i >= len(self)):
            raise InvalidArgument("finite-net points are row indices")

    def _distance(self, u, v):
        i = np.asarray(u[..., 0], dtype=int)
        j = np.asarray(v[..., 0], dtype=int)
        return self.matrix[i, j]

    def candidates(self, fill):
        return np.arange(len(self), dtype=float)[:, None]

    def net(self, eps):
        eps = _positive(eps)
        cand = self.candidates(0.0)
        idx, _ = greedy_farthest_points(cand, self._distance, eps)
        return cand[idx]

    def to_spec(self):
        return {"kind": "finite_net", "matrix": self.matrix.tolist()}


def dir_distance(sigma: DirectionSpace, u, v):
    out = sigma.distance(u, v)
    return float(out) if np.ndim(out) == 0 else out


def dir_volume(sigma: DirectionSpace) -> float:
    return sigma.volume()


def dir_sample(sigma: DirectionSpace, seed=None, size=None):
    return sigma.sample(seed, size)


def dir_net(sigma: DirectionSpace, eps: float) -> np.ndarray:
    return sigma.net(eps)
