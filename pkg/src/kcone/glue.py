"""Self-gluings of a cone along its boundary.

``X = C/(x ~ phi(x))`` where ``phi`` is an isometric involution of the
boundary ``Sigma x {R}``.  Quotient distances are shortest paths in an
identification graph: the two query points, a boundary net and its
``phi``-images, joined by exact cone distances, with zero-length edges
between each boundary node and its image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .cone import ConePoint, ConeSpace
from .dirspace import Circle, DirectionSpace, FiniteNet, Interval, Sphere
from .errors import InvalidArgument
from .estimate import VolumeEstimate
from .radial import as_generator
from .spaceform import _cosine_law_side, _sn

__all__ = [
    "Involution",
    "Identity",
    "ReflectionCircle",
    "AntipodalCircle",
    "ReflectionSphere",
    "AntipodalSphere",
    "IntervalReflection",
    "FinitePairing",
    "InvolutionReport",
    "involution_check",
    "involution_bilipschitz_property",
    "BilipschitzReport",
    "GluedSpace",
    "GluedDistance",
    "IdentificationGraph",
    "glued_distance",
    "glued_distance_refinement",
    "glued_volume",
    "radius_report",
    "catalog_2d",
    "PolygonGluing",
    "polygon_glued_distance",
    "DEFAULT_CROSSINGS",
]

DEFAULT_CROSSINGS = 4


# -- involutions -------------------------------------------------------------


class Involution:
    """Isometric involution of a direction space."""

    kind = "involution"
    space_type: type | tuple = DirectionSpace

    def require(self, sigma: DirectionSpace) -> None:
        if not isinstance(sigma, self.space_type):
            raise InvalidArgument(f"{type(self).__name__} does not act on {type(sigma).__name__}")

    def __call__(self, sigma: DirectionSpace, u):
        self.require(sigma)
        return self._apply(sigma, sigma.as_points(u))

    def _apply(self, sigma, u):  # pragma: no cover - abstract
        raise NotImplementedError

    def to_spec(self) -> dict:
        return {"kind": self.kind}

    def __repr__(self):
        return f"{type(self).__name__}()"

    def __eq__(self, other):
        return type(self) is type(other) and self.to_spec() == other.to_spec()

    def __hash__(self):
        return hash(repr(self.to_spec()))


class Identity(Involution):
    kind = "identity"

    def _apply(self, sigma, u):
        return u.copy()


class ReflectionCircle(Involution):
    """``u -> 2 axis - u`` on a circle: fixes ``axis`` and the point opposite."""

    kind = "reflection_circle"
    space_type = Circle

    def __init__(self, axis: float = 0.0):
        self.axis = float(axis)

    def _apply(self, sigma, u):
        return sigma.wrap(2 * self.axis - u)

    def to_spec(self):
        return {"kind": self.kind, "axis": self.axis}

    def __repr__(self):
        return f"ReflectionCircle(axis={self.axis!r})"


class AntipodalCircle(Involution):
    """Half-turn rotation of a circle."""

    kind = "antipodal_circle"
    space_type = Circle

    def _apply(self, sigma, u):
        return sigma.wrap(u + 0.5 * sigma.length)


class ReflectionSphere(Involution):
    """Reflection of a round sphere in the hyperplane orthogonal to ``normal``."""

    kind = "reflection_sphere"
    space_type = Sphere

    def __init__(self, normal: Sequence[float]):
        n = np.asarray(normal, dtype=float)
        norm = np.linalg.norm(n)
        if n.ndim != 1 or not norm > 0:
            raise InvalidArgument("reflection normal must be a non-zero vector")
        self.normal = n / norm

    def require(self, sigma):
        super().require(sigma)
        if sigma.coord_dim != len(self.normal):
            raise InvalidArgument(f"normal has {len(self.normal)} entries, sphere needs {sigma.coord_dim}")

    def _apply(self, sigma, u):
        return u - 2.0 * (u @ self.normal)[..., None] * self.normal

    def to_spec(self):
        return {"kind": self.kind, "normal": self.normal.tolist()}

    def __repr__(self):
        return f"ReflectionSphere(normal={self.normal.tolist()!r})"


class AntipodalSphere(Involution):
    kind = "antipodal_sphere"
    space_type = Sphere

    def _apply(self, sigma, u):
        return -u


class IntervalReflection(Involution):
    """``u -> theta - u`` on ``[0, theta]``."""

    kind = "interval_reflection"
    space_type = Interval

    def _apply(self, sigma, u):
        return sigma.theta - u


class FinitePairing(Involution):
    """Swap the two indices of each pair; unlisted indices are fixed."""

    kind = "finite_pairing"
    space_type = FiniteNet

    def __init__(self, pairs: Sequence[Sequence[int]]):
        seen = set()
        clean = []
        for pair in pairs:
            if len(pair) != 2:
                raise InvalidArgument(f"pairing entries must be index pairs, got {pair!r}")
            i, j = (int(p) for p in pair)
            if i < 0 or j < 0:
                raise InvalidArgument("pairing indices must be non-negative")
            for k in {i, j}:
                if k in seen:
                    raise InvalidArgument(f"index {k} appears in two pairs")
                seen.add(k)
            clean.append((i, j))
        self.pairs = tuple(clean)

    def table(self, size: int) -> np.ndarray:
        t = np.arange(size)
        for i, j in self.pairs:
            if max(i, j) >= size:
                raise InvalidArgument(f"pair ({i}, {j}) outside a net of {size} points")
            t[i], t[j] = j, i
        return t

    def require(self, sigma):
        super().require(sigma)
        self.table(len(sigma))

    def _apply(self, sigma, u):
        return self.table(len(sigma))[u[..., 0].astype(int)][..., None].astype(float)

    def to_spec(self):
        return {"kind": self.kind, "pairs": [list(p) for p in self.pairs]}

    def __repr__(self):
        return f"FinitePairing({list(self.pairs)!r})"


# -- checks ------------------------------------------------------------------


def _test_points(sigma: DirectionSpace, samples: int, seed) -> np.ndarray:
    if isinstance(sigma, FiniteNet):
        return np.arange(len(sigma), dtype=float)[:, None]
    rng = as_generator(seed)
    pts = sigma.sample(rng, int(samples))
    # nets add the special points (poles, endpoints, fixed points of the grid)
    return np.concatenate([pts, sigma.net(0.5)])


@dataclass(frozen=True)
class InvolutionReport:
    involution_defect: float
    isometry_defect: float
    witness: tuple | None
    tol: float

    @property
    def passed(self) -> bool:
        return self.involution_defect <= self.tol and self.isometry_defect <= self.tol


def involution_check(phi: Involution, sigma: DirectionSpace, samples: int = 200, tol: float = 1e-12, seed=0) -> InvolutionReport:
    """Measure how far ``phi`` is from an isometric involution of ``sigma``.

    ``involution_defect`` is ``max d(phi(phi(u)), u)``; ``isometry_defect``
    is ``max |d(phi u, phi v) - d(u, v)|`` over all pairs of test points, and
    ``witness`` holds the offending pair.
    """
    phi.require(sigma)
    u = _test_points(sigma, samples, seed)
    pu = phi(sigma, u)
    ppu = phi(sigma, pu)
    inv = float(np.max(sigma._distance(ppu, u)))
    before = sigma._distance(u[:, None, :], u[None, :, :])
    after = sigma._distance(pu[:, None, :], pu[None, :, :])
    gap = np.abs(after - before)
    i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
    iso = float(gap[i, j])
    witness = (u[i].tolist(), u[j].tolist()) if iso > 0 else None
    return InvolutionReport(inv, iso, witness, float(tol))


@dataclass(frozen=True)
class BilipschitzReport:
    max_defect: float
    witness: tuple | None
    witness_distance: float
    within_envelope: bool


def involution_bilipschitz_property(
    phi: Involution,
    sigma: DirectionSpace,
    R: float,
    samples: int = 300,
    kappa: float = 0.0,
    close: float = 0.5,
    seed=0,
) -> BilipschitzReport:
    """Largest ``| |phi x phi y| / |x y| - 1 |`` over close boundary pairs.

    Boundary points are ``(u, R)`` in the ``kappa``-cone; pairs whose
    direction distance is at most ``close`` are used (every pair for a finite
    net).  ``within_envelope`` tells whether each pair obeys
    ``defect <= 20 |x y|``.
    """
    phi.require(sigma)
    u = _test_points(sigma, samples, seed)
    pu = phi(sigma, u)
    ang = np.minimum(sigma._distance(u[:, None, :], u[None, :, :]), math.pi)
    ang_img = np.minimum(sigma._distance(pu[:, None, :], pu[None, :, :]), math.pi)
    iu = np.triu_indices(len(u), 1)
    a, b = ang[iu], ang_img[iu]
    keep = a > 0
    if not isinstance(sigma, FiniteNet):
        keep &= a <= close
    if not np.any(keep):
        return BilipschitzReport(0.0, None, 0.0, True)
    d = _cosine_law_side(kappa, R, R, a[keep])
    d_img = _cosine_law_side(kappa, R, R, b[keep])
    ok = d > 0
    defect = np.where(ok, np.abs(d_img / np.where(ok, d, 1.0) - 1.0), 0.0)
    k = int(np.argmax(defect))
    rows, cols = iu[0][keep][k], iu[1][keep][k]
    worst = float(defect[k])
    witness = (u[rows].tolist(), u[cols].tolist()) if worst > 0 else None
    return BilipschitzReport(worst, witness, float(d[k]), bool(np.all(defect <= 20.0 * d)))


# -- identification graph ----------------------------------------------------


def _dijkstra(weights: np.ndarray, source: int):
    n = len(weights)
    dist = np.full(n, np.inf)
    pred = np.full(n, -1)
    done = np.zeros(n, dtype=bool)
    dist[source] = 0.0
    for _ in range(n):
        u = int(np.argmin(np.where(done, np.inf, dist)))
        if done[u] or not np.isfinite(dist[u]):
            break
        done[u] = True
        alt = dist[u] + weights[u]
        better = (alt < dist) & ~done
        dist[better] = alt[better]
        pred[better] = u
    return dist, pred


@dataclass
class IdentificationGraph:
    """Complete graph with exact edge lengths plus zero-length identification edges."""

    weights: np.ndarray
    identified: list = field(default_factory=list)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        for i, j in self.identified:
            w[i, j] = w[j, i] = 0.0
        self.weights = w
        self._ident = {(min(i, j), max(i, j)) for i, j in self.identified if i != j}

    def __len__(self):
        return len(self.weights)

    def shortest_from(self, source: int):
        return _dijkstra(self.weights, source)

    def path(self, pred: np.ndarray, target: int) -> list[int]:
        out = [target]
        while pred[out[-1]] >= 0:
            out.append(int(pred[out[-1]]))
        return out[::-1]

    def crossings(self, path: Sequence[int]) -> int:
        return sum((min(a, b), max(a, b)) in self._ident for a, b in zip(path, path[1:]))

    def all_pairs(self) -> np.ndarray:
        return np.array([self.shortest_from(s)[0] for s in range(len(self))])


class GluedDistance(NamedTuple):
    value: float
    error: float
    crossings: int = 0
    nodes: int = 0


class GluedSpace:
    """Cone with its boundary glued by an isometric involution.

    For ``kappa > 0`` only radii with ``R <= pi / (2 sqrt kappa)`` or
    ``R = pi / sqrt kappa`` are accepted unless ``non_admissible=True``.
    """

    def __init__(self, cone: ConeSpace, phi: Involution, non_admissible: bool = False):
        phi.require(cone.sigma)
        if not cone.rigidity_admissible and not non_admissible:
            raise InvalidArgument(
                f"R = {cone.R} is neither <= pi/(2 sqrt kappa) nor = pi/sqrt kappa; "
                "pass non_admissible=True to build it anyway"
            )
        self.cone = cone
        self.phi = phi
        self.non_admissible = bool(non_admissible)

    def __repr__(self):
        return f"GluedSpace({self.cone!r}, {self.phi!r})"

    @property
    def sigma(self) -> DirectionSpace:
        return self.cone.sigma

    def boundary_angle(self, length: float) -> float:
        """Direction angle at which boundary points are ``length`` apart in the cone."""
        kappa, R = self.cone.kappa, self.cone.R
        s = float(_sn(kappa, 0.5 * length)) / float(_sn(kappa, R)) if _sn(kappa, R) > 0 else 2.0
        return math.pi if s >= 1 else 2 * math.asin(s)

    def boundary_net(self, eps: float):
        """Boundary directions whose boundary covering radius is at most ``eps / 2``.

        Returns the net and its covering radius measured in the cone.
        """
        sigma = self.sigma
        if isinstance(sigma, FiniteNet):
            return np.arange(len(sigma), dtype=float)[:, None], 0.0
        alpha = self.boundary_angle(0.5 * eps)
        net = sigma.net(alpha)
        rho = min(sigma.net_covering_radius(alpha), math.pi)
        return net, float(_cosine_law_side(self.cone.kappa, self.cone.R, self.cone.R, rho))

    def on_boundary(self, t) -> bool:
        return float(t) >= self.cone.R * (1 - 1e-12)

    def graph(self, points: Sequence[ConePoint], eps: float, extra=None):
        """Identification graph over ``points``, a boundary net and its images.

        ``extra`` optionally adds boundary directions (used to nest nets
        under refinement).  Returns the graph and the boundary covering
        radius.
        """
        sigma, R = self.sigma, self.cone.R
        net, h = self.boundary_net(eps)
        if extra is not None and len(extra):
            net = np.concatenate([net, extra])
        dirs = [sigma.as_points(p.direction).reshape(1, -1) for p in points]
        ts = [float(p.t) for p in points]
        boundary_queries = [k for k, t in enumerate(ts) if self.on_boundary(t)]
        base = np.concatenate(dirs + [net])
        base_t = np.array(ts + [R] * len(net))
        on_bd = np.array(boundary_queries + list(range(len(points), len(base))), dtype=int)
        images = self.phi._apply(sigma, base[on_bd])
        D = np.concatenate([base, images])
        T = np.concatenate([base_t, np.full(len(images), R)])
        W = self.cone._distance(D[:, None, :], T[:, None], D[None, :, :], T[None, :])
        pairs = [(int(i), len(base) + k) for k, i in enumerate(on_bd)]
        return IdentificationGraph(W, pairs), h, (D, T), net


def _as_cone_point(G: GluedSpace, p) -> ConePoint:
    return G.cone.point(*p)


def glued_distance(G: GluedSpace, x, y, eps: float, crossings: int = DEFAULT_CROSSINGS, _extra=None) -> GluedDistance:
    """Quotient distance between the classes of ``x`` and ``y``.

    The value ``d`` satisfies ``d_true <= d <= d_true + error`` where
    ``error = 2 * crossings * h`` and ``h <= eps / 2`` is the boundary
    covering radius of the net, provided a shortest path crosses the glued
    boundary at most ``crossings`` times.
    """
    x = _as_cone_point(G, x)
    y = _as_cone_point(G, y)
    if isinstance(G.phi, Identity):
        return GluedDistance(float(G.cone._distance(x.direction, x.t, y.direction, y.t)), 0.0, 0, 2)
    if not eps > 0:
        raise InvalidArgument("net scale must be positive")
    graph, h, _, _ = G.graph([x, y], eps, _extra)
    dist, pred = graph.shortest_from(0)
    used = graph.crossings(graph.path(pred, 1))
    return GluedDistance(float(dist[1]), 2.0 * crossings * h, used, len(graph))


def glued_distance_refinement(G: GluedSpace, x, y, eps: float, levels: int = 4, crossings: int = DEFAULT_CROSSINGS):
    """Distances at ``eps, eps/2, ...`` with each graph containing all earlier nets.

    Keeping earlier nodes makes the sequence of values non-increasing.
    """
    x = _as_cone_point(G, x)
    y = _as_cone_point(G, y)
    rows = []
    extra = np.empty((0, G.sigma.coord_dim))
    for k in range(int(levels)):
        e = eps / 2 ** k
        r = glued_distance(G, x, y, e, crossings, extra)
        rows.append((e, r))
        net, _ = G.boundary_net(e)
        extra = np.concatenate([extra, net])
    return rows


def glued_volume(G: GluedSpace) -> VolumeEstimate:
    """Volume of the glued space, which is the cone volume: the glued boundary is null."""
    return G.cone.ball_volume(G.cone.R)


def radius_report(G: GluedSpace, eps: float, crossings: int = DEFAULT_CROSSINGS) -> GluedDistance:
    """Largest graph distance from the apex to a boundary net node."""
    apex = G.cone.apex
    graph, h, (_, T), _ = G.graph([apex], eps)
    if isinstance(G.phi, Identity):
        h = 0.0
    dist, _ = graph.shortest_from(0)
    return GluedDistance(float(np.max(dist[T >= G.cone.R * (1 - 1e-12)])), 2.0 * crossings * h, 0, len(graph))


def catalog_2d(kappa: float, r: float, theta: float = math.pi) -> list[GluedSpace]:
    """The five two-dimensional gluings over a circle of length ``2 theta`` and ``[0, theta]``.

    Order: circle with identity, reflection, antipodal map; interval with
    identity, reflection.
    """
    circle = ConeSpace(Circle(2 * theta), kappa, r)
    segment = ConeSpace(Interval(theta), kappa, r)
    return [
        GluedSpace(circle, Identity()),
        GluedSpace(circle, ReflectionCircle(0.0)),
        GluedSpace(circle, AntipodalCircle()),
        GluedSpace(segment, Identity()),
        GluedSpace(segment, IntervalReflection()),
    ]


# -- polygons ----------------------------------------------------------------


class PolygonGluing:
    """Convex polygon whose sides are each folded onto themselves about their midpoint.

    Every point at parameter ``s`` along a side is glued to the point at
    ``1 - s``; consequently all vertices become one point.
    """

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise InvalidArgument("polygon needs at least three planar vertices")
        edges = np.roll(v, -1, axis=0) - v
        cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if np.all(cross < 0):
            v = v[::-1].copy()
            edges = np.roll(v, -1, axis=0) - v
        elif not np.all(cross > 0):
            raise InvalidArgument("polygon must be strictly convex")
        self.vertices = v
        self.edges = edges

    @property
    def sides(self) -> int:
        return len(self.vertices)

    def contains(self, p, tol: float = 1e-12) -> bool:
        p = np.asarray(p, dtype=float)
        rel = p - self.vertices
        cross = self.edges[:, 0] * rel[:, 1] - self.edges[:, 1] * rel[:, 0]
        scale = np.linalg.norm(self.edges, axis=1)
        return bool(np.all(cross >= -tol * scale * max(1.0, float(np.max(np.abs(self.vertices))))))

    def side_points(self, eps: float):
        """Symmetric grids on each side (endpoints and midpoint included), spacing <= eps."""
        out = []
        for a, e in zip(self.vertices, self.edges):
            m = max(2, math.ceil(np.linalg.norm(e) / eps - 1e-12))
            m += m % 2
            s = np.linspace(0.0, 1.0, m + 1)
            out.append((a + s[:, None] * e, a + (1 - s)[:, None] * e))
        return out

    def to_spec(self):
        return {"kind": "polygon", "vertices": self.vertices.tolist()}


def polygon_glued_distance(P: PolygonGluing, x, y, eps: float, crossings: int = DEFAULT_CROSSINGS) -> GluedDistance:
    """Quotient distance in a polygon with midpoint-reflection side gluings."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    for p in (x, y):
        if p.shape != (2,) or not P.contains(p):
            raise InvalidArgument(f"point {p.tolist()} is not in the polygon")
    if not eps > 0:
        raise InvalidArgument("net scale must be positive")
    pts = [x[None], y[None]]
    pairs = []
    offset = 2
    for grid, image in P.side_points(eps):
        m = len(grid)
        pts += [grid, image]
        pairs += [(offset + k, offset + m + k) for k in range(m)]
        offset += 2 * m
    # queries on a side are glued to their reflected partner
    for q, p in ((0, x), (1, y)):
        for a, e in zip(P.vertices, P.edges):
            rel = p - a
            if abs(e[0] * rel[1] - e[1] * rel[0]) <= 1e-12 * float(e @ e):
                s = float(rel @ e) / float(e @ e)
                pts.append((a + (1 - s) * e)[None])
                pairs.append((q, offset))
                offset += 1
    X = np.concatenate(pts)
    W = np.linalg.norm(X[:, None, :] - X[None, :, :], axis=-1)
    graph = IdentificationGraph(W, pairs)
    dist, pred = graph.shortest_from(0)
    h = 0.5 * max(np.linalg.norm(e) / (len(g) - 1) for e, (g, _) in zip(P.edges, P.side_points(eps)))
    return GluedDistance(float(dist[1]), float(2.0 * crossings * h), graph.crossings(graph.path(pred, 1)), len(graph))
