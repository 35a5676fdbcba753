"""Battery of invariant checks over every module.

Each check returns a :class:`CheckResult` with the observed quantity and the
threshold it was held to.  Given the same seed the battery is deterministic.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import comparison as cmp
from . import glue, spaceform, tube
from .cone import ConePoint, ConeSpace, base_angle_check, flat_sector_volume_mc
from .dirspace import Circle, Interval, Sphere, Suspension

__all__ = ["CheckResult", "CHECKS", "run_suite"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    observed: float
    threshold: float
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


CHECKS: dict[str, Callable[[np.random.Generator], CheckResult]] = {}


def check(name: str):
    def register(fn):
        CHECKS[name] = fn
        return fn

    return register


def _result(name, observed, threshold, ok=None, detail=""):
    observed = float(observed)
    passed = bool(observed <= threshold) if ok is None else bool(ok)
    return CheckResult(name, passed, observed, float(threshold), detail)


KAPPAS = (-1.0, 0.0, 1.0)


# -- space forms -------------------------------------------------------------


def _triangles(rng, kappa, n):
    top = spaceform.diameter_bound(kappa)
    hi = 3.0 if math.isinf(top) else top
    return rng.uniform(0, hi, n), rng.uniform(0, hi, n), rng.uniform(0, math.pi, n)


@check("spaceform.half_chord_identity")
def _(rng):
    worst = 0.0
    for kappa in KAPPAS:
        s, t, th = _triangles(rng, kappa, 10_000)
        d = spaceform.cosine_law_side(kappa, s, t, th)
        lhs = spaceform.sn(kappa, d / 2) ** 2
        rhs = spaceform.half_chord_value(kappa, s, t, th)
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-300))))
    return _result("spaceform.half_chord_identity", worst, 1e-12, detail="max relative gap")


@check("spaceform.cosine_law_monotone_symmetric")
def _(rng):
    worst = 0.0
    th = np.linspace(0, math.pi, 201)
    for kappa in KAPPAS:
        s, t, _ = _triangles(rng, kappa, 200)
        d = spaceform.cosine_law_side(kappa, s[:, None], t[:, None], th[None, :])
        d_swap = spaceform.cosine_law_side(kappa, t[:, None], s[:, None], th[None, :])
        worst = max(worst, float(np.max(-np.diff(d, axis=1))), float(np.max(np.abs(d - d_swap))))
    return _result("spaceform.cosine_law_monotone_symmetric", worst, 1e-12)


@check("spaceform.cosine_law_scaling")
def _(rng):
    worst = 0.0
    for kappa in (-4.0, -0.25, 0.25, 4.0):
        s, t, th = _triangles(rng, kappa, 2000)
        q = math.sqrt(abs(kappa))
        lhs = spaceform.cosine_law_side(kappa, s, t, th)
        rhs = spaceform.cosine_law_side(math.copysign(1.0, kappa), q * s, q * t, th) / q
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return _result("spaceform.cosine_law_scaling", worst, 1e-12)


@check("spaceform.trig_margins")
def _(rng):
    lam = np.linspace(0, 1, 100)
    worst = math.inf
    grids = {
        1: (lam, np.linspace(0, math.pi, 100)),
        2: (lam, np.linspace(0, 5, 100)),
        3: (np.linspace(0, 3, 100), np.linspace(0, math.pi * (1 - 1e-9), 100)),
        4: (np.linspace(0, 3, 100), np.linspace(0, 5, 100)),
    }
    for case, (L, X) in grids.items():
        L2, X2 = np.meshgrid(L, X)
        if case == 3:
            keep = L2 * X2 <= math.pi
            L2, X2 = L2[keep], X2[keep]
        worst = min(worst, float(np.min(spaceform.trig_inequality_margin(case, L2, X2))))
    return _result("spaceform.trig_margins", -worst, 1e-12, detail="negated smallest margin")


@check("spaceform.comparison_angle_inverse")
def _(rng):
    worst = 0.0
    for kappa in KAPPAS:
        s, t, _ = _triangles(rng, kappa, 3000)
        s, t = s + 0.05, t + 0.05
        top = spaceform.diameter_bound(kappa)
        if not math.isinf(top):
            s, t = np.minimum(s, top * 0.95), np.minimum(t, top * 0.95)
        th = rng.uniform(1e-3, math.pi - 1e-3, len(s))
        d = spaceform.cosine_law_side(kappa, s, t, th)
        back = np.array([spaceform.comparison_angle(kappa, a, b, c) for a, b, c in zip(s, t, d)])
        worst = max(worst, float(np.max(np.abs(back - th))))
    return _result("spaceform.comparison_angle_inverse", worst, 1e-10)


# -- direction spaces and cones ---------------------------------------------


@check("dirspace.net_covering")
def _(rng):
    worst = 0.0
    for sigma in (Circle(), Interval(2.0), Sphere(2), Suspension(Circle())):
        eps = 0.3
        net = sigma.net(eps)
        probe = sigma.sample(rng, 2000)
        cover = np.max(np.min(sigma._distance(probe[:, None, :], net[None, :, :]), axis=1))
        worst = max(worst, float(cover) / sigma.net_covering_radius(eps))
    return _result("dirspace.net_covering", worst, 1.0, detail="covering radius over guarantee")


@check("cone.ball_volume_exact")
def _(rng):
    a = ConeSpace(Circle(), 0.0, 1.0).ball_volume(1.0).value - math.pi
    b = ConeSpace(Circle(), 1.0, math.pi).ball_volume(math.pi).value - 4 * math.pi
    return _result("cone.ball_volume_exact", max(abs(a), abs(b)), 1e-9)


@check("cone.ball_volume_mc")
def _(rng):
    worst = 0.0
    for sigma, kappa, R, r in ((Sphere(2), 1.0, 1.5, 1.0), (Interval(1.0), -1.0, 2.0, 1.2)):
        C = ConeSpace(sigma, kappa, R)
        est = C.ball_volume_mc(r, 200_000, rng)
        worst = max(worst, abs(est.value - C.ball_volume(r).value) / est.error)
    return _result("cone.ball_volume_mc", worst, 4.0, detail="deviation in standard errors")


@check("cone.base_angle")
def _(rng):
    C = ConeSpace(Circle(5.0), 0.0, 2.0)
    worst = 0.0
    for _ in range(20):
        a = ConePoint(np.array([rng.uniform(0, 5)]), rng.uniform(0.3, 1.7))
        b = ConePoint(np.array([(a.direction[0] + rng.uniform(0.2, 2.3)) % 5.0]), rng.uniform(0.3, 2.0))
        worst = max(worst, base_angle_check(C, a, b))
    return _result("cone.base_angle", worst, 1e-6)


# -- tubes -------------------------------------------------------------------


@check("tube.lens_closed_form")
def _(rng):
    worst = 0.0
    for n in (2, 3):
        for d in (0.3, 1.0, 1.7):
            chain = tube.BallChain(n, 1.0, [d])
            worst = max(worst, abs(tube.tube_volume_exact(chain) - tube.two_ball_union_closed_form(n, 1.0, d)))
    return _result("tube.lens_closed_form", worst, 1e-9)


@check("tube.classical_identity")
def _(rng):
    worst = 0.0
    for n in range(2, 7):
        for r in (0.5, 1.0, 2.0):
            half = tube.trapezoidal_ball_volume(n, r, r)
            worst = max(worst, abs(2 * half - tube.euclidean_ball_volume(n, r)) / tube.euclidean_ball_volume(n, r))
    return _result("tube.classical_identity", worst, 1e-9)


@check("tube.expansion_bound")
def _(rng):
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 5))
        eps = float(rng.uniform(0.05, 0.5))
        gaps = rng.uniform(0.05, 1.0, int(rng.integers(1, 12))) * eps * eps
        chain = tube.BallChain(n, eps, gaps)
        value, bound = tube.tube_volume_expansion(chain)
        worst = max(worst, abs(value - tube.tube_volume_exact(chain)) / bound)
    return _result("tube.expansion_bound", worst, 1.0, detail="error over reported bound")


@check("tube.monotone_in_gaps")
def _(rng):
    g = np.linspace(0.01, 1.99, 200)
    v = np.array([tube.tube_volume_exact(tube.BallChain(3, 1.0, [x, 0.7])) for x in g])
    limit = tube.tube_volume_exact(tube.BallChain(2, 1.0, [2 - 1e-9]))
    worst = max(float(np.max(-np.diff(v))), abs(limit - 2 * math.pi) - 1e-6)
    return _result("tube.monotone_in_gaps", worst, 0.0)


@check("tube.chain_mc")
def _(rng):
    gaps = [0.8] * 4
    exact = tube.tube_volume_exact(tube.BallChain(2, 1.0, gaps))
    est = tube.union_volume_mc(2, 1.0, tube.collinear_centers(2, gaps), 400_000, rng)
    return _result("tube.chain_mc", abs(est.value - exact) / est.error, 4.0)


@check("tube.trapezoid_increasing")
def _(rng):
    worst = 0.0
    for n in (2, 3, 5):
        v = [tube.trapezoidal_ball_volume(n, 1.0, h) for h in np.linspace(0, 1, 200)]
        worst = max(worst, float(np.max(-np.diff(v))) if np.all(np.diff(v) > 0) else 1.0)
    return _result("tube.trapezoid_increasing", worst, 0.0, ok=worst <= 0)


# -- gluing ------------------------------------------------------------------


@check("glue.involutions")
def _(rng):
    worst = 0.0
    for theta in (0.5 * math.pi, math.pi):
        for G in glue.catalog_2d(0.0, 1.0, theta):
            rep = glue.involution_check(G.phi, G.sigma, 200, 1e-12, rng)
            worst = max(worst, rep.involution_defect, rep.isometry_defect)
    for phi in (glue.AntipodalSphere(), glue.ReflectionSphere([0.3, -1.0, 0.5])):
        rep = glue.involution_check(phi, Sphere(2), 200, 1e-12, rng)
        worst = max(worst, rep.involution_defect, rep.isometry_defect)
    return _result("glue.involutions", worst, 1e-12)


@check("glue.identity_is_cone_distance")
def _(rng):
    C = ConeSpace(Circle(), 0.0, 1.0)
    G = glue.GluedSpace(C, glue.Identity())
    worst = 0.0
    for _ in range(50):
        x = C.sample(rng)
        y = C.sample(rng)
        worst = max(worst, abs(glue.glued_distance(G, x, y, 0.1).value - C.distance(x, y)))
    return _result("glue.identity_is_cone_distance", worst, 0.0)


@check("glue.antipodal_shortcut")
def _(rng):
    G = glue.GluedSpace(ConeSpace(Circle(), 0.0, 1.0), glue.AntipodalCircle())
    rows = glue.glued_distance_refinement(G, ([0.0], 0.9), ([math.pi], 0.9), 0.2, 3)
    values = [r.value for _, r in rows]
    worst = max(abs(v - 0.2) / (3 * e) for (e, _), v in zip(rows, values))
    ok = worst <= 1 and all(b <= a for a, b in zip(values, values[1:]))
    return _result("glue.antipodal_shortcut", worst, 1.0, ok=ok, detail="deviation over 3 eps")


@check("glue.radius_reports")
def _(rng):
    worst = 0.0
    eps = 0.1
    for theta in (0.5 * math.pi, math.pi):
        for G in glue.catalog_2d(0.0, 1.0, theta):
            rep = glue.radius_report(G, eps)
            worst = max(worst, abs(rep.value - G.cone.R) / (glue.DEFAULT_CROSSINGS * eps))
    return _result("glue.radius_reports", worst, 1.0, detail="deviation over k eps")


@check("glue.pseudometric")
def _(rng):
    G = glue.GluedSpace(ConeSpace(Circle(), 0.0, 1.0), glue.ReflectionCircle(0.4))
    pts = [G.cone.sample(rng) for _ in range(6)]
    graph, _, _, _ = G.graph(pts, 0.4)
    D = graph.all_pairs()
    asym = float(np.max(np.abs(D - D.T)))
    i, j, k = (rng.integers(0, len(D), 10_000) for _ in range(3))
    tri = float(np.max(D[i, k] - D[i, j] - D[j, k]))
    return _result("glue.pseudometric", max(asym, tri), 1e-9)


@check("glue.non_expansion")
def _(rng):
    worst = -math.inf
    for G in glue.catalog_2d(0.0, 1.0, math.pi)[1:3]:
        for _ in range(10):
            x, y = G.cone.sample(rng), G.cone.sample(rng)
            d = glue.glued_distance(G, x, y, 0.2)
            worst = max(worst, d.value - G.cone.distance(x, y) - d.error)
    return _result("glue.non_expansion", worst, 0.0)


@check("glue.volume")
def _(rng):
    worst = 0.0
    for G in glue.catalog_2d(0.0, 1.0, math.pi):
        v = glue.glued_volume(G)
        exact = G.sigma.volume() * 0.5
        mc = flat_sector_volume_mc(G.cone, 200_000, rng)
        worst = max(worst, abs(v.value - exact) / 1e-9, abs(mc.value - v.value) / (4 * mc.error))
    return _result("glue.volume", worst, 1.0, detail="max of exact gap/1e-9 and MC gap/4 sigma")


@check("glue.bilipschitz_isometries")
def _(rng):
    a = glue.involution_bilipschitz_property(glue.AntipodalCircle(), Circle(), 1.0, 300, 0.0, seed=rng)
    b = glue.involution_bilipschitz_property(glue.ReflectionSphere([0, 0, 1]), Sphere(2), 1.0, 300, 1.0, seed=rng)
    return _result("glue.bilipschitz_isometries", max(a.max_defect, b.max_defect), 1e-9,
                   ok=a.within_envelope and b.within_envelope and max(a.max_defect, b.max_defect) <= 1e-9)


@check("glue.tetrahedron")
def _(rng):
    s3 = math.sqrt(3)
    P = glue.PolygonGluing([[0, 0], [2, 0], [1, s3]])
    eps = 0.1
    mid_a, mid_b = np.array([1.5, s3 / 2]), np.array([0.5, s3 / 2])
    d1 = glue.polygon_glued_distance(P, mid_a, mid_b, eps).value
    d2 = glue.polygon_glued_distance(P, [0, 0], mid_a, eps).value
    worst = max(abs(d1 - 1) / (2 * eps), abs(d2 - 1) / (3 * eps))
    return _result("glue.tetrahedron", worst, 1.0)


# -- comparison --------------------------------------------------------------


def _catalog_cones():
    return [
        ConeSpace(Circle(), 0.0, 2.0),
        ConeSpace(Circle(math.pi), 1.0, 1.2),
        ConeSpace(Interval(1.0), -1.0, 2.0),
        ConeSpace(Sphere(2), 1.0, math.pi),
        ConeSpace(Suspension(Circle()), -0.5, 1.5),
    ]


@check("comparison.model_self_comparison")
def _(rng):
    worst = 0.0
    for C in _catalog_cones():
        R = C.R
        radii = [(0.0, 0.3 * R, 0.9 * R), (0.1 * R, 0.5 * R, R)]
        rep = cmp.bg_ratio_report(C, radii, C.sigma, C.kappa)
        worst = max(worst, max(abs(r.margin) for r in rep.rows))
    return _result("comparison.model_self_comparison", worst, 2e-9)


@check("comparison.sigma_independent_cone_ratio")
def _(rng):
    worst = 0.0
    for kappa, n in ((1.0, 3), (-1.0, 2), (0.0, 3)):
        sphere = ConeSpace(Sphere(n - 1), kappa, 1.4)
        other = ConeSpace(Interval(1.0) if n == 2 else Suspension(Interval(0.5)), kappa, 1.4)
        for r in (0.3, 0.8):
            q1 = sphere.ball_volume(1.4).value / sphere.ball_volume(r).value
            q2 = other.ball_volume(1.4).value / other.ball_volume(r).value
            worst = max(worst, abs(q1 - q2) / q1)
    return _result("comparison.sigma_independent_cone_ratio", worst, 1e-9)


@check("comparison.sphere_vs_flat")
def _(rng):
    R = np.linspace(0.01, math.pi, 100)
    R1, R3 = np.meshgrid(R, R)
    keep = R1 < R3
    margin = (1 - np.cos(R1[keep])) / (1 - np.cos(R3[keep])) - (R1[keep] / R3[keep]) ** 2
    return _result("comparison.sphere_vs_flat", -float(np.min(margin)), 1e-12)


@check("comparison.partition_sequence")
def _(rng):
    worst = 0.0
    ok = True
    for kappa in KAPPAS:
        for delta in (1e-2, 1e-3):
            ps = cmp.partition_sequence(kappa, 1.0, delta, 0.05)
            c = ps.check()
            ok &= c["positive"] and c["strictly_decreasing"] and c["envelope"]
            worst = max(worst, c["max_envelope_ratio"] - 1)
    geo = cmp.partition_sequence(0.0, 1.0, 0.01, 0.05).a
    closed = (1 - 0.01) ** np.arange(len(geo))
    exact = float(np.max(np.abs(geo / closed - 1)))
    return _result("comparison.partition_sequence", max(worst, exact), 1e-12, ok=ok and exact <= 1e-12)


@check("comparison.annulus_map_scaling")
def _(rng):
    worst = 0.0
    for kappa in KAPPAS:
        r, R, delta = 0.5, 1.0, 0.05
        lam = float(spaceform.sn(kappa, r) / spaceform.sn(kappa, R))
        t = rng.uniform(R - delta, R, (2, 1000))
        img = [cmp.annulus_map(ConePoint(np.zeros((1000, 1)), t[i]), r, R, delta, kappa).t for i in range(2)]
        worst = max(worst, float(np.max(np.abs((img[0] - img[1]) - lam * (t[0] - t[1])))))
    return _result("comparison.annulus_map_scaling", worst, 1e-12)


@check("comparison.bilipschitz_bounds")
def _(rng):
    ok = True
    worst = 0.0
    configs = {
        0.0: ((0.5, 1.0, 0.01), (0.3, 2.0, 0.1), (1.0, 1.5, 0.2)),
        1.0: ((0.5, 1.0, 0.01), (0.3, 1.4, 0.05), (1.0, 1.5, 0.1)),
        -1.0: ((0.5, 1.0, 0.005), (0.3, 1.4, 0.05), (1.0, 1.5, 0.1)),
    }
    for kappa, cases in configs.items():
        for r, R, delta in cases:
            rep = cmp.bilipschitz_bounds_check(Sphere(2), kappa, r, R, delta, 10_000, rng)
            ok &= rep.passed
            if kappa == 0:
                worst = max(worst, rep.max_exact_deviation)
    return _result("comparison.bilipschitz_bounds", worst, 1e-12, ok=ok and worst <= 1e-12,
                   detail="flat-case deviation from r/R")


@check("comparison.riemann_halving")
def _(rng):
    lo, hi = math.inf, 0.0
    for kappa, sigma in ((0.0, Circle()), (1.0, Sphere(2)), (-1.0, Interval(1.0))):
        a = cmp.riemann_sum_consistency(sigma, kappa, 0.2, 0.6, 1.4, 0.01).residual
        b = cmp.riemann_sum_consistency(sigma, kappa, 0.2, 0.6, 1.4, 0.005).residual
        lo, hi = min(lo, a / b), max(hi, a / b)
    return _result("comparison.riemann_halving", hi, 3.0, ok=lo >= 1.5 and hi <= 3.0, detail=f"ratios in [{lo:.4f}, {hi:.4f}]")


@check("comparison.rigidity")
def _(rng):
    reps = [
        cmp.rigidity_equality_check(Circle(math.pi), 0.0, 1.0, 2.0),
        cmp.rigidity_equality_check(Circle(), 1.0, 0.5 * math.pi, math.pi),
        cmp.rigidity_equality_check(Interval(0.5 * math.pi), -1.0, 0.5, 1.5),
    ]
    worst = max(max(abs(r.ratio_r - 1), abs(r.ratio_R - 1)) for r in reps)
    return _result("comparison.rigidity", worst, 1e-9, ok=all(r.passed for r in reps))


@check("comparison.homothety_volume")
def _(rng):
    C = ConeSpace(Sphere(2), 0.0, 1.0)
    r, R, delta = 0.5, 1.0, 0.2
    lam = r / R
    dom = cmp.space_annulus_volume(C, (R - delta, R), "mc", 400_000, rng)
    img = cmp.space_annulus_volume(C, (r - lam * delta, r), "mc", 400_000, rng)
    gap = abs(img.value - lam ** 3 * dom.value) / (img.error + lam ** 3 * dom.error)
    return _result("comparison.homothety_volume", gap, 4.0)


@check("comparison.rough_volume")
def _(rng):
    eps = np.geomspace(0.005, 0.05, 4)
    sq = cmp.rough_volume_estimate(cmp.EuclideanRegion.unit_square(), eps, rng)
    seg = cmp.rough_volume_estimate(Interval(1.0), eps / 5, rng)
    dev = max(abs(sq.exponent - 2) / 0.1, abs(seg.exponent - 1) / 0.05, sq.flatness / 0.1, seg.flatness / 0.1)
    return _result("comparison.rough_volume", dev, 1.0, detail=f"c(2) ~ {sq.ratio_to_volume:.4f}")


def _stream(seed, name: str) -> np.random.Generator:
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, zlib.crc32(name.encode())])


def run_suite(seed: int = 0, only=None) -> list[CheckResult]:
    """Run the battery; each check gets its own stream derived from ``seed`` and its name."""
    names = [n for n in CHECKS if only is None or any(n.startswith(p) for p in only)]
    return [CHECKS[n](_stream(seed, n)) for n in names]
