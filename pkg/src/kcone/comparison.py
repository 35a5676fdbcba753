"""Relative volume comparison on cones, glued cones and round spheres.

The model for a space with curvature bounded below by ``kappa`` and space of
directions ``Sigma_p`` at a point ``p`` is the cone over ``Sigma_p``; its
annuli have volume ``vol(Sigma_p) * int sn_kappa^(dim Sigma_p)``.  This module
compares annulus-volume ratios of a space against that model and exercises
the quantities that drive the comparison argument: the partition sequence,
the radial annulus map and its bi-Lipschitz constant, the Riemann-sum
discretization of the log-volume ratios, and net-count (rough) volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .cone import ConePoint, ConeSpace
from .dirspace import Circle, DirectionSpace, Interval, Sphere, sphere_area
from .errors import InvalidArgument, StepViolation, UnsupportedVariant
from .estimate import VolumeEstimate, mc_fraction, split_streams
from .glue import GluedSpace
from .radial import as_generator
from .spaceform import _check_lengths, _half_chord, _sn, cs, diameter_bound, sn, sn_power_integral

__all__ = [
    "AnnulusSpec",
    "RoundSphere",
    "EuclideanRegion",
    "model_annulus_volume",
    "space_annulus_volume",
    "RatioRow",
    "RatioReport",
    "bg_ratio_report",
    "RigidityReport",
    "rigidity_equality_check",
    "PartitionSequence",
    "partition_sequence",
    "annulus_map",
    "bilipschitz_constant",
    "BilipschitzBounds",
    "bilipschitz_bounds_check",
    "RiemannResidual",
    "riemann_sum_consistency",
    "RoughVolume",
    "net_count",
    "greedy_separated_count",
    "rough_volume_estimate",
]


@dataclass(frozen=True)
class AnnulusSpec:
    """Radii of the annulus ``{r_inner < |px| < r_outer}``; ``r_inner = 0`` gives a punctured ball."""

    r_inner: float
    r_outer: float

    def __post_init__(self):
        a, b = float(self.r_inner), float(self.r_outer)
        if not (math.isfinite(a) and math.isfinite(b)) or a < 0 or not b > a:
            raise InvalidArgument(f"annulus needs 0 <= r_inner < r_outer, got ({a}, {b})")
        object.__setattr__(self, "r_inner", a)
        object.__setattr__(self, "r_outer", b)

    def check_within(self, radius: float) -> None:
        if self.r_outer > radius * (1 + 1e-12):
            raise InvalidArgument(f"annulus outer radius {self.r_outer} exceeds {radius}")


def _spec(spec) -> AnnulusSpec:
    return spec if isinstance(spec, AnnulusSpec) else AnnulusSpec(*spec)


# -- spaces with closed-form balls ------------------------------------------


class RoundSphere:
    """Round ``dim``-sphere of radius ``rho`` with a designated pole.

    Balls about the pole have volume
    ``vol(S^(dim-1)) * rho^dim * int_0^(r/rho) sin^(dim-1)``; for ``dim = 2``
    this is ``2 pi rho^2 (1 - cos(r / rho))``.
    """

    def __init__(self, rho: float = 1.0, dim: int = 2):
        if not rho > 0:
            raise InvalidArgument("sphere radius must be positive")
        if int(dim) < 1:
            raise InvalidArgument("sphere dimension must be >= 1")
        self.rho = float(rho)
        self.dim = int(dim)

    def __repr__(self):
        return f"RoundSphere(rho={self.rho!r}, dim={self.dim})"

    @property
    def radius(self) -> float:
        return math.pi * self.rho

    @property
    def curvature(self) -> float:
        return 1.0 / self.rho ** 2

    def directions(self) -> DirectionSpace:
        return Sphere(self.dim - 1)

    def annulus_volume(self, a: float, b: float) -> VolumeEstimate:
        if self.dim == 2:
            v = 2 * math.pi * self.rho ** 2 * (math.cos(a / self.rho) - math.cos(b / self.rho))
        else:
            area = sphere_area(self.dim - 1)
            v = area * self.rho ** self.dim * sn_power_integral(1.0, self.dim - 1, a / self.rho, b / self.rho)
        return VolumeEstimate(v, 4e-16 * abs(v) + 1e-300, "closed_form")

    def sample_radii(self, rng, size):
        """Distances from the pole of uniformly distributed points."""
        g = rng.standard_normal((size, self.dim + 1))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        cos = g[:, -1]
        sin = np.linalg.norm(g[:, :-1], axis=1)
        return self.rho * np.arctan2(sin, cos)

    def total_volume(self) -> float:
        return sphere_area(self.dim) * self.rho ** self.dim

    def to_spec(self):
        return {"kind": "round_sphere", "rho": self.rho, "dim": self.dim}


@dataclass(frozen=True)
class EuclideanRegion:
    """Bounded region of ``R^dim`` given by an indicator and a bounding box."""

    name: str
    lo: tuple
    hi: tuple
    indicator: object = field(repr=False)
    volume: Optional[float] = None

    @property
    def dim(self) -> int:
        return len(self.lo)

    @staticmethod
    def unit_square() -> "EuclideanRegion":
        return EuclideanRegion("unit_square", (0.0, 0.0), (1.0, 1.0), lambda p: np.ones(len(p), dtype=bool), 1.0)

    @staticmethod
    def unit_disk() -> "EuclideanRegion":
        return EuclideanRegion(
            "unit_disk", (-1.0, -1.0), (1.0, 1.0), lambda p: np.einsum("ij,ij->i", p, p) <= 1.0, math.pi
        )

    @staticmethod
    def segment(length: float = 1.0) -> "EuclideanRegion":
        return EuclideanRegion("segment", (0.0,), (float(length),), lambda p: np.ones(len(p), dtype=bool), float(length))


# -- annulus volumes ---------------------------------------------------------


def model_annulus_volume(sigma: DirectionSpace, kappa: float, spec) -> VolumeEstimate:
    """Annulus volume in the model cone over ``sigma``, in closed form."""
    spec = _spec(spec)
    _check_lengths(kappa, spec.r_inner, spec.r_outer)
    v = sigma.volume() * sn_power_integral(kappa, sigma.dim, spec.r_inner, spec.r_outer)
    return VolumeEstimate(v, 1e-14 * abs(v) + 1e-300, "closed_form")


def _radial_mc(radii_sampler, total: float, spec: AnnulusSpec, samples: int, seed) -> VolumeEstimate:
    def hits(rng, k):
        t = radii_sampler(rng, k)
        return (t > spec.r_inner) & (t < spec.r_outer)

    p, se = mc_fraction(hits, samples, seed)
    return VolumeEstimate(total * p, total * se, "mc", int(samples))


def space_annulus_volume(space, spec, method: str = "exact", samples: int = 100_000, seed=None) -> VolumeEstimate:
    """Volume of the annulus about the base point (cone apex or sphere pole).

    ``method="exact"`` uses quadrature for cones and glued cones (gluing does
    not change volume) and the closed form for round spheres;
    ``method="mc"`` estimates the same quantity by sampling.
    """
    spec = _spec(spec)
    if method not in ("exact", "mc"):
        raise InvalidArgument(f"method must be 'exact' or 'mc', got {method!r}")
    if isinstance(space, GluedSpace):
        space = space.cone
    if isinstance(space, ConeSpace):
        spec.check_within(space.R)
        b = min(spec.r_outer, space.R)
        if method == "exact":
            return space.annulus_volume(spec.r_inner, b)
        total = space.ball_volume(space.R).value
        return _radial_mc(lambda rng, k: space.sample(rng, k).t, total, spec, samples, seed)
    if isinstance(space, RoundSphere):
        spec.check_within(space.radius)
        b = min(spec.r_outer, space.radius)
        if method == "exact":
            return space.annulus_volume(spec.r_inner, b)
        return _radial_mc(space.sample_radii, space.total_volume(), spec, samples, seed)
    raise UnsupportedVariant(f"no annulus volume for {type(space).__name__}")


def _space_radius(space) -> float:
    if isinstance(space, GluedSpace):
        return space.cone.R
    if isinstance(space, ConeSpace):
        return space.R
    if isinstance(space, RoundSphere):
        return space.radius
    raise UnsupportedVariant(f"no base-point radius for {type(space).__name__}")


# -- ratio reports -----------------------------------------------------------


@dataclass(frozen=True)
class RatioRow:
    R1: float
    R2: float
    R3: float
    form: str
    space_ratio: float
    model_ratio: float
    margin: float
    method: str
    error: float

    @property
    def holds(self) -> bool:
        return self.margin >= -self.error


@dataclass
class RatioReport:
    """Comparison rows; ``omitted`` lists ``(R1, R2, R3, form, reason)`` for skipped rows."""

    rows: list = field(default_factory=list)
    omitted: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.rows)

    def min_margin(self) -> float:
        return min(r.margin for r in self.rows)

    COLUMNS = ("R1", "R2", "R3", "form", "space_ratio", "model_ratio", "margin", "method", "error")


FORMS = ("outer", "split", "ball")


def _ratio(num: VolumeEstimate, den: VolumeEstimate):
    q = num.value / den.value
    return q, (num.error + abs(q) * den.error) / abs(den.value)


def bg_ratio_report(
    space,
    radii: Sequence[Sequence[float]],
    sigma_p: DirectionSpace,
    kappa: float,
    method: str = "exact",
    samples: int = 100_000,
    seed=None,
) -> RatioReport:
    """Compare annulus ratios about the base point against the model cone over ``sigma_p``.

    For each ``(R1, R2, R3)`` three rows are produced:

    * ``outer``: ``vol A(R1, R3) / vol A(R2, R3)``
    * ``split``: ``vol A(R1, R2) / vol A(R2, R3)``
    * ``ball``:  ``vol B(R1) / vol B(R3)`` (omitted when ``R1 = 0``)

    ``margin = space ratio - model ratio``; ``error`` combines the volume
    errors of both ratios.
    """
    report = RatioReport()
    top = _space_radius(space)
    seeds = split_streams(seed, len(radii))
    for triple, ss in zip(radii, seeds):
        R1, R2, R3 = (float(x) for x in triple)
        if not 0 <= R1 < R2 < R3:
            raise InvalidArgument(f"radii must satisfy 0 <= R1 < R2 < R3, got {triple}")
        if R3 > top * (1 + 1e-12):
            raise InvalidArgument(f"R3 = {R3} exceeds the radius {top} about the base point")
        _check_lengths(kappa, R3)

        def vol(a, b, _ss=ss):
            return space_annulus_volume(space, (a, b), method, samples, _ss)

        def model(a, b):
            return model_annulus_volume(sigma_p, kappa, (a, b))

        pairs = {
            "outer": ((R1, R3), (R2, R3)),
            "split": ((R1, R2), (R2, R3)),
            "ball": ((0.0, R1), (0.0, R3)),
        }
        for form in FORMS:
            num, den = pairs[form]
            if form == "ball" and R1 == 0:
                report.omitted.append((R1, R2, R3, form, "empty_ball"))
                continue
            s, es = _ratio(vol(*num), vol(*den))
            m, em = _ratio(model(*num), model(*den))
            report.rows.append(RatioRow(R1, R2, R3, form, s, m, s - m, method, es + em))
    return report


@dataclass(frozen=True)
class RigidityReport:
    ratio_r: float
    ratio_R: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            abs(self.ratio_r - 1) <= self.tol
            and abs(self.ratio_R - 1) <= self.tol
            and abs(self.ratio_r - self.ratio_R) <= self.tol
        )


def rigidity_equality_check(sigma: DirectionSpace, kappa: float, r: float, R: float, tol: float = 1e-9) -> RigidityReport:
    """Equality case of the ball-ratio comparison on the model cone itself.

    Cone ball volumes come from quadrature and model volumes from the closed
    form, so agreement of both ratios with 1 exercises two separate routes.
    """
    if not 0 < r < R:
        raise InvalidArgument("need 0 < r < R")
    cone = ConeSpace(sigma, kappa, R)
    ratio_r = cone.ball_volume(r).value / model_annulus_volume(sigma, kappa, (0.0, r)).value
    ratio_R = cone.ball_volume(R).value / model_annulus_volume(sigma, kappa, (0.0, R)).value
    return RigidityReport(ratio_r, ratio_R, tol)


# -- partition sequence ------------------------------------------------------


@dataclass(frozen=True)
class PartitionSequence:
    a: np.ndarray
    delta: float
    r: float
    kappa: float
    floor: float = 0.0
    truncated: bool = False

    def __len__(self):
        return len(self.a)

    @property
    def contraction(self) -> float:
        """Factor ``q`` with ``a_(i+1) <= q a_i``."""
        scale = self.r if self.kappa >= 0 else float(sn(self.kappa, self.r))
        return 1.0 - self.delta / scale

    def check(self, rtol: float = 1e-12) -> dict:
        a = self.a
        ratio = a[1:] / a[:-1]
        return {
            "first_is_one": bool(a[0] == 1.0),
            "positive": bool(np.all(a > 0)),
            "strictly_decreasing": bool(np.all(np.diff(a) < 0)),
            "envelope": bool(np.all(ratio <= self.contraction * (1 + rtol))),
            "max_envelope_ratio": float(np.max(ratio / self.contraction)) if len(a) > 1 else 0.0,
        }


def partition_sequence(kappa: float, r: float, delta: float, floor: float = 0.0, max_terms: int = 20_000) -> PartitionSequence:
    """Terms ``a_0 = 1``, ``a_(i+1) = a_i - sn(a_i r) / (r sn r) * delta`` while ``a_i r >= floor``.

    With ``floor = 0`` the sequence is cut at ``max_terms``.  A non-positive
    term raises :class:`StepViolation`.
    """
    r, delta, floor = float(r), float(delta), float(floor)
    if not r > 0:
        raise InvalidArgument("r must be positive")
    _check_lengths(kappa, r)
    if kappa > 0 and r >= diameter_bound(kappa) * (1 - 1e-15):
        raise InvalidArgument("r must be below pi/sqrt(kappa) so that sn(r) > 0")
    if not 0 < delta < r:
        raise InvalidArgument("delta must lie in (0, r)")
    if not 0 <= floor < r:
        raise InvalidArgument("floor must lie in [0, r)")
    scale = delta / (r * float(_sn(kappa, r)))
    out = [1.0]
    a = 1.0
    truncated = True
    while len(out) < max_terms:
        nxt = a - float(_sn(kappa, a * r)) * scale
        if nxt <= 0:
            raise StepViolation(f"term {len(out)} is {nxt} <= 0; delta = {delta} is too large")
        if nxt * r < floor:
            truncated = False
            break
        out.append(nxt)
        a = nxt
    return PartitionSequence(np.array(out), delta, r, float(kappa), floor, truncated and floor > 0)


# -- annulus map -------------------------------------------------------------


def _lambda(kappa, r, R):
    return float(_sn(kappa, r)) / float(_sn(kappa, R))


def _check_map_domain(kappa, r, R, delta):
    if not (0 < r and 0 < delta < R):
        raise InvalidArgument("need r > 0 and 0 < delta < R")
    _check_lengths(kappa, r, R)
    if kappa > 0 and R >= diameter_bound(kappa) * (1 - 1e-15):
        raise InvalidArgument("R must be below pi/sqrt(kappa)")
    lam = _lambda(kappa, r, R)
    if not r - lam * delta > 0:
        raise InvalidArgument("the image annulus is empty: r - lambda delta <= 0")
    return lam


def annulus_map(x: ConePoint, r: float, R: float, delta: float, kappa: float) -> ConePoint:
    """Send ``(u, t)`` with ``t in [R - delta, R]`` to ``(u, r - lambda (R - t))``, ``lambda = sn r / sn R``."""
    lam = _check_map_domain(kappa, r, R, delta)
    t = np.asarray(x.t, dtype=float)
    if np.any(t < R - delta - 1e-12 * R) or np.any(t > R * (1 + 1e-12)):
        raise InvalidArgument(f"radial coordinate must lie in [R - delta, R] = [{R - delta}, {R}]")
    out = r - lam * (R - t)
    return ConePoint(x.direction, float(out) if out.ndim == 0 else out)


def bilipschitz_constant(kappa: float, R: float, delta: float) -> float:
    """``c(kappa, delta)``: 1 for ``kappa = 0``, ``1 - 2 delta/(sn R + delta)`` above, ``1 - delta cs(R)/R`` below."""
    if kappa == 0:
        return 1.0
    if kappa > 0:
        return 1.0 - 2 * delta / (float(sn(kappa, R)) + delta)
    return 1.0 - delta * float(cs(kappa, R)) / R


@dataclass(frozen=True)
class BilipschitzBounds:
    min_ratio: float
    max_ratio: float
    lower: float
    upper: float
    lam: float
    c: float
    pairs: int
    max_exact_deviation: float
    rtol: float = 1e-12

    @property
    def passed(self) -> bool:
        slack = self.rtol * self.lam
        return self.lower - slack <= self.min_ratio and self.max_ratio <= self.upper + slack


def bilipschitz_bounds_check(
    sigma: DirectionSpace,
    kappa: float,
    r: float,
    R: float,
    delta: float,
    samples: int = 10_000,
    seed=None,
    strict: bool = True,
) -> BilipschitzBounds:
    """Observed range of ``sn(|f x f y| / 2) / sn(|x y| / 2)`` for the annulus map ``f``.

    Pairs are drawn in the cone annulus ``R - delta <= t <= R``.  The ratio is
    computed from half-chord values, ``sqrt(h(fx, fy) / h(x, y))``.
    ``max_exact_deviation`` is ``max |ratio / lambda - 1|``, which vanishes
    for ``kappa = 0`` where the map is the homothety by ``r / R``.  With
    ``strict`` the smallness hypotheses on ``delta`` are enforced.
    """
    lam = _check_map_domain(kappa, r, R, delta)
    if strict and kappa > 0 and not delta < 0.5 * float(sn(kappa, R)):
        raise InvalidArgument("need delta < sn(R) / 2")
    if strict and kappa < 0 and not delta < R / float(cs(kappa, R)):
        raise InvalidArgument("need delta < R / cs(R)")
    c = bilipschitz_constant(kappa, R, delta)
    rng = as_generator(seed)
    u = sigma.sample(rng, samples)
    v = sigma.sample(rng, samples)
    tu = rng.uniform(R - delta, R, samples)
    tv = rng.uniform(R - delta, R, samples)
    angle = np.minimum(sigma._distance(u, v), math.pi)
    h = _half_chord(kappa, tu, tv, angle)
    fu = r - lam * (R - tu)
    fv = r - lam * (R - tv)
    h_img = _half_chord(kappa, fu, fv, angle)
    ok = h > 0
    ratio = np.sqrt(h_img[ok] / h[ok])
    return BilipschitzBounds(
        float(np.min(ratio)),
        float(np.max(ratio)),
        c * lam,
        lam / c,
        lam,
        c,
        int(np.count_nonzero(ok)),
        float(np.max(np.abs(ratio / lam - 1.0))),
    )


# -- Riemann sums ------------------------------------------------------------


@dataclass(frozen=True)
class RiemannResidual:
    residual: float
    I1: float
    I1_sum: float
    I2: float
    I2_sum: float
    steps: int
    step: float


def riemann_sum_consistency(sigma: DirectionSpace, kappa: float, R1: float, R2: float, R3: float, delta: float) -> RiemannResidual:
    """Discretization error of both log-ratio sums on the model cone.

    With ``m = floor((R3 - R2) / delta) + 1``, ``D = (R3 - R2) / m`` and
    ``r_j = R2 + j D``:

    * ``I1_sum = sum_j vol A(r_(j-1), r_j) / vol A(R1, r_j)``
    * ``I2_sum = sum_j D sn^k(r_j) / phi(r_j)``, ``phi(r) = int_R1^r sn^k``

    Both approximate ``log(phi(R3) / phi(R2))``, which on the model equals
    ``log(vol A(R1, R3) / vol A(R1, R2))``.  The residual is the sum of the
    two absolute errors and decays linearly in ``delta``.
    """
    if not 0 <= R1 < R2 < R3:
        raise InvalidArgument("need 0 <= R1 < R2 < R3")
    if not delta > 0:
        raise InvalidArgument("delta must be positive")
    _check_lengths(kappa, R3)
    k = sigma.dim
    m = int(math.floor((R3 - R2) / delta)) + 1
    step = (R3 - R2) / m
    r = R2 + step * np.arange(m + 1)

    def phi(b):
        return sn_power_integral(kappa, k, R1, b)

    phis = np.array([phi(b) for b in r])
    pieces = np.array([sn_power_integral(kappa, k, r[j - 1], r[j]) for j in range(1, m + 1)])
    exact = math.log(phis[-1] / phis[0])
    s1 = float(np.sum(pieces / phis[1:]))
    s2 = float(np.sum(step * np.asarray(_sn(kappa, r[1:])) ** k / phis[1:]))
    return RiemannResidual(abs(s1 - exact) + abs(s2 - exact), exact, s1, exact, s2, m, step)


# -- rough volume ------------------------------------------------------------


def greedy_separated_count(points: np.ndarray, eps: float, priority: np.ndarray, boxsize=None) -> int:
    """Size of the greedy ``eps``-separated subset taken in ``priority`` order.

    Equivalent to visiting points by increasing priority and keeping a point
    when it is farther than ``eps`` from all kept points.  Computed in rounds:
    an undecided point whose priority beats every undecided neighbour is
    kept and its neighbours are discarded.
    """
    tree = cKDTree(points, boxsize=boxsize)
    pairs = tree.query_pairs(eps, output_type="ndarray")
    n = len(points)
    if len(pairs) == 0:
        return n
    u = np.concatenate([pairs[:, 0], pairs[:, 1]])
    v = np.concatenate([pairs[:, 1], pairs[:, 0]])
    state = np.zeros(n, dtype=np.int8)  # 0 undecided, 1 kept, -1 dropped
    big = np.iinfo(np.int64).max
    while True:
        live = (state[u] == 0) & (state[v] == 0)
        lu, lv = u[live], v[live]
        best = np.full(n, big, dtype=np.int64)
        np.minimum.at(best, lu, priority[lv])
        keep = (state == 0) & (priority < best)
        if not np.any(keep):
            break
        state[keep] = 1
        hit = keep[u] & (state[v] == 0)
        state[v[hit]] = -1
    return int(np.count_nonzero(state == 1))


def net_count(space, eps: float, seed=None, density: float = 4.0) -> int:
    """Number of points in a greedy eps-net built from random candidates.

    ``density / eps^dim`` candidates are drawn per unit of bounding-box
    volume and visited in random order; a candidate joins the net when it is
    farther than ``eps`` from every earlier member.
    """
    rng = as_generator(seed)
    boxsize = None
    if isinstance(space, ConeSpace):
        if space.kappa != 0 or not isinstance(space.sigma, Circle) or space.sigma.length != 2 * math.pi:
            raise UnsupportedVariant("net counting on cones is limited to the flat disk")
        R = space.R
        space = EuclideanRegion("disk", (-R, -R), (R, R), lambda p: np.einsum("ij,ij->i", p, p) <= R * R, math.pi * R * R)
    if isinstance(space, EuclideanRegion):
        lo, hi = np.asarray(space.lo), np.asarray(space.hi)
        n = int(math.ceil(density * float(np.prod(hi - lo)) / eps ** space.dim))
        pts = rng.uniform(lo, hi, (n, space.dim))
        pts = pts[space.indicator(pts)]
    elif isinstance(space, (Interval, Circle)):
        n = int(math.ceil(density * space.volume() / eps))
        pts = space.sample(rng, n)
        if isinstance(space, Circle):
            boxsize = space.length
            pts = np.mod(pts, space.length)
    else:
        raise UnsupportedVariant(f"no net counting for {type(space).__name__}")
    priority = rng.permutation(len(pts)).astype(np.int64)
    return greedy_separated_count(pts, eps, priority, boxsize)


@dataclass(frozen=True)
class RoughVolume:
    exponent: float
    eps: tuple
    counts: tuple
    scaled: tuple
    flatness: float
    constant: float
    ratio_to_volume: Optional[float]


def _measure_of(space) -> Optional[float]:
    if isinstance(space, EuclideanRegion):
        return space.volume
    if isinstance(space, ConeSpace):
        return space.ball_volume(space.R).value
    try:
        return float(space.volume())
    except Exception:
        return None


def rough_volume_estimate(space, eps_list: Sequence[float], seed=None, density: float = 4.0) -> RoughVolume:
    """Fit ``log beta(eps) = c + s * (-log eps)`` over greedy net counts.

    ``scaled`` holds ``eps^n beta(eps)`` with ``n`` the dimension of the
    space; ``flatness`` is ``max/min - 1`` of that trend, ``constant`` its
    mean, and ``ratio_to_volume`` the constant divided by the known measure
    (the empirical proportionality constant between rough volume and
    Hausdorff measure).
    """
    eps = np.sort(np.asarray(eps_list, dtype=float))
    if len(eps) < 2 or np.any(eps <= 0):
        raise InvalidArgument("need at least two positive scales")
    if eps[-1] / eps[0] < 10 * (1 - 1e-9):
        raise InvalidArgument("scales must span at least one decade")
    streams = split_streams(seed, len(eps))
    counts = np.array([net_count(space, e, s, density) for e, s in zip(eps, streams)], dtype=float)
    slope, _ = np.polyfit(-np.log(eps), np.log(counts), 1)
    n = space.dim
    scaled = eps ** n * counts
    const = float(np.mean(scaled))
    vol = _measure_of(space)
    return RoughVolume(
        float(slope),
        tuple(eps.tolist()),
        tuple(int(c) for c in counts),
        tuple(scaled.tolist()),
        float(np.max(scaled) / np.min(scaled) - 1.0),
        const,
        const / vol if vol else None,
    )
