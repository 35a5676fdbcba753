"""Acceptance criteria 1-11.

Each test records one ``PASS``/``FAIL`` line; the lines are printed in the
terminal summary (and immediately when run with ``-s``).  Run alone with::

    pytest tests/test_acceptance.py -v
"""

import math
import subprocess
import sys

import numpy as np
import pytest

from kcone import comparison as cmp
from kcone import glue, spaceform, tube
from kcone.cone import ConeSpace, flat_sector_volume_mc
from kcone.dirspace import Circle, Interval, Sphere, Suspension
from kcone.estimate import mc_fraction

RESULTS = {}


def record(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def test_01_cone_volume_exactness():
    a = ConeSpace(Circle(), 0.0, 1.0).ball_volume(1.0).value
    b = ConeSpace(Circle(), 1.0, math.pi).ball_volume(math.pi).value
    gap = max(abs(a - math.pi), abs(b - 4 * math.pi))
    record(1, gap <= 1e-9, f"flat disk {a!r}, round sphere {b!r}, max gap {gap:.2e} (tol 1e-9)")


def test_02_tube_formula():
    rng = np.random.default_rng(202)
    v = tube.tube_volume_exact(tube.BallChain(2, 1.0, [1.0]))
    closed_gap = abs(v - (4 * math.pi / 3 + math.sqrt(3) / 2))
    mc = tube.union_volume_mc(2, 1.0, [[0.0, 0.0], [1.0, 0.0]], 10_000_000, rng)
    sigmas = abs(mc.value - v) / mc.error
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 6))
        eps = float(rng.uniform(0.05, 0.7))
        gaps = rng.uniform(0.01, 1.0, int(rng.integers(1, 12))) * eps * eps
        chain = tube.BallChain(n, eps, gaps)
        value, bound = tube.tube_volume_expansion(chain)
        worst = max(worst, abs(value - tube.tube_volume_exact(chain)) / bound)
    ok = closed_gap <= 1e-9 and sigmas <= 4 and worst <= 1
    record(2, ok, f"closed-form gap {closed_gap:.2e}; MC (1e7) off by {sigmas:.2f} sigma; worst expansion error/bound {worst:.3f}")


def test_03_trapezoidal_ball():
    worst = max(
        abs(2 * tube.trapezoidal_ball_volume(n, 1.0, 1.0) - tube.euclidean_ball_volume(n, 1.0)) / 2 for n in range(2, 7)
    )
    r, h = 1.0, 0.5

    def hits(g, k):
        p = g.uniform((-r, 0.0), (r, h), (k, 2))
        return np.einsum("ij,ij->i", p, p) < r * r

    p, se = mc_fraction(hits, 2_000_000, np.random.default_rng(303))
    box = 2 * r * h
    exact = tube.trapezoidal_ball_volume(2, r, h)
    sigmas = abs(box * p - exact) / (box * se)
    record(3, worst <= 1e-9 and sigmas <= 4, f"half-ball gap {worst:.2e} (n = 2..6); h = r/2 MC off by {sigmas:.2f} sigma")


def test_04_trig_battery():
    L = np.linspace(0, 1, 100)
    grids = {
        1: (L, np.linspace(0, math.pi, 100)),
        2: (L, np.linspace(0, 8, 100)),
        3: (np.linspace(0, 3, 100), np.linspace(0, math.pi * (1 - 1e-9), 100)),
        4: (np.linspace(0, 3, 100), np.linspace(0, 8, 100)),
    }
    margins = {}
    for case, (lam, x) in grids.items():
        l2, x2 = (a.ravel() for a in np.meshgrid(lam, x))
        if case == 3:
            keep = l2 * x2 <= math.pi
            l2, x2 = l2[keep], x2[keep]
        margins[case] = float(np.min(spaceform.trig_inequality_margin(case, l2, x2)))
    rng = np.random.default_rng(404)
    gap = 0.0
    for kappa in (-1.0, 0.0, 1.0):
        hi = 3.0 if kappa <= 0 else math.pi
        s, t, th = rng.uniform(0, hi, 10_000), rng.uniform(0, hi, 10_000), rng.uniform(0, math.pi, 10_000)
        d = spaceform.cosine_law_side(kappa, s, t, th)
        lhs = spaceform.sn(kappa, d / 2) ** 2
        rhs = spaceform.half_chord_value(kappa, s, t, th)
        gap = max(gap, float(np.max(np.abs(lhs - rhs) / np.maximum(rhs, 1e-300))))
    ok = min(margins.values()) >= -1e-12 and gap <= 1e-12
    shown = ", ".join(f"{k}: {v:.1e}" for k, v in margins.items())
    record(4, ok, f"min margins {{{shown}}}; half-chord identity relative gap {gap:.1e}")


BILIP_CONFIGS = {
    0.0: ((0.5, 1.0, 0.01), (0.3, 2.0, 0.1), (1.0, 1.5, 0.2)),
    1.0: ((0.5, 1.0, 0.01), (0.3, 1.4, 0.05), (1.0, 1.5, 0.1)),
    -1.0: ((0.5, 1.0, 0.005), (0.3, 1.4, 0.05), (1.0, 1.5, 0.1)),
}


def test_05_bilipschitz_bounds():
    rng = np.random.default_rng(505)
    ok = True
    flat_dev = 0.0
    tight = []
    for kappa, cases in BILIP_CONFIGS.items():
        for r, R, delta in cases:
            rep = cmp.bilipschitz_bounds_check(Sphere(2), kappa, r, R, delta, 100_000, rng)
            ok &= rep.passed and rep.pairs >= 99_000
            tight.append(min(rep.min_ratio - rep.lower, rep.upper - rep.max_ratio) / rep.lam)
            if kappa == 0:
                flat_dev = max(flat_dev, rep.max_exact_deviation)
    ok &= flat_dev <= 1e-12
    record(5, ok, f"9 configs x 1e5 pairs inside envelope (min relative slack {min(tight):.2e}); flat |ratio/(r/R) - 1| <= {flat_dev:.1e}")


def test_06_partition_sequence():
    ok = True
    worst = 0.0
    for kappa in (-1.0, 0.0, 1.0):
        for r in (0.5, 1.0, 1.5):
            for delta in (1e-2, 1e-3):
                c = cmp.partition_sequence(kappa, r, delta, floor=0.05 * r).check()
                ok &= c["first_is_one"] and c["positive"] and c["strictly_decreasing"] and c["envelope"]
                worst = max(worst, c["max_envelope_ratio"])
    geo = cmp.partition_sequence(0.0, 1.0, 0.01, floor=0.01).a
    exact = float(np.max(np.abs(geo / (0.99 ** np.arange(len(geo))) - 1)))
    ok &= exact <= 1e-12
    record(6, ok, f"18 sequences positive, strictly decreasing; max step ratio / contraction {worst:.12f}; flat vs geometric {exact:.1e}")


def test_07_bishop_gromov():
    cones = [
        ConeSpace(Circle(), 0.0, 2.0),
        ConeSpace(Circle(math.pi), 1.0, 1.2),
        ConeSpace(Interval(1.0), -1.0, 2.0),
        ConeSpace(Sphere(2), 1.0, math.pi),
        ConeSpace(Suspension(Circle()), -0.5, 1.5),
    ]
    self_margin = 0.0
    for C in cones:
        R = C.R
        rep = cmp.bg_ratio_report(C, [(0.0, 0.3 * R, 0.9 * R), (0.1 * R, 0.5 * R, R)], C.sigma, C.kappa)
        self_margin = max(self_margin, max(abs(r.margin) for r in rep.rows))
    triples = [
        (f1 * f2 * R3, f2 * R3, R3)
        for R3 in (0.25 * math.pi, 0.5 * math.pi, 0.75 * math.pi, math.pi)
        for f2 in (0.2, 0.4, 0.6, 0.8, 0.95)
        for f1 in (0.0, 0.25, 0.5, 0.75, 0.9)
    ]
    rep = cmp.bg_ratio_report(cmp.RoundSphere(), triples, Circle(), 0.0)
    sphere_min = rep.min_margin()
    ratios = []
    for kappa, sigma in ((0.0, Circle()), (1.0, Sphere(2)), (-1.0, Interval(1.0))):
        a = cmp.riemann_sum_consistency(sigma, kappa, 0.2, 0.6, 1.4, 0.01).residual
        b = cmp.riemann_sum_consistency(sigma, kappa, 0.2, 0.6, 1.4, 0.005).residual
        ratios.append(a / b)
    ok = self_margin <= 2e-9 and sphere_min >= 0 and len(triples) == 100 and all(1.5 <= q <= 3 for q in ratios)
    record(7, ok, f"self-comparison max |margin| {self_margin:.1e}; sphere vs flat min margin {sphere_min:.3e} over "
           f"{len(rep.rows)} rows; Riemann halving ratios {', '.join(f'{q:.3f}' for q in ratios)}")


def test_08_gluing_metric():
    rng = np.random.default_rng(808)
    C = ConeSpace(Circle(), 0.0, 1.0)
    ident = glue.GluedSpace(C, glue.Identity())
    id_gap = max(
        abs(glue.glued_distance(ident, x, y, 0.1).value - C.distance(x, y))
        for x, y in ((C.sample(rng), C.sample(rng)) for _ in range(200))
    )
    anti = glue.GluedSpace(C, glue.AntipodalCircle())
    rows = glue.glued_distance_refinement(anti, ([0.0], 0.9), ([math.pi], 0.9), 0.2, levels=4)
    conv = max(abs(r.value - 0.2) / (3 * e) for e, r in rows)
    radius = 0.0
    for kappa, R in ((0.0, 1.0), (1.0, 0.5 * math.pi), (-1.0, 1.0)):
        for theta in (0.5 * math.pi, math.pi):
            for G in glue.catalog_2d(kappa, R, theta):
                radius = max(radius, abs(glue.radius_report(G, 0.1).value - R) / (glue.DEFAULT_CROSSINGS * 0.1))
    vol_gap = 0.0
    sigmas = 0.0
    for theta in (0.5 * math.pi, math.pi):
        for G in glue.catalog_2d(0.0, 1.0, theta):
            v = glue.glued_volume(G).value
            vol_gap = max(vol_gap, abs(v - G.cone.ball_volume(1.0).value))
            mc = flat_sector_volume_mc(G.cone, 400_000, rng)
            sigmas = max(sigmas, abs(mc.value - v) / mc.error)
    ok = id_gap == 0 and conv <= 1 and radius <= 1 and vol_gap == 0 and sigmas <= 4
    record(8, ok, f"identity gap {id_gap}; antipodal values {[round(r.value, 6) for _, r in rows]} "
           f"(worst |d - 0.2|/3eps {conv:.3f}); radius worst dev/(k eps) {radius:.3f}; volume MC {sigmas:.2f} sigma")


def test_09_tetrahedron():
    s3 = math.sqrt(3)
    P = glue.PolygonGluing([[0, 0], [2, 0], [1, s3]])
    a, b = [1.5, s3 / 2], [0.5, s3 / 2]
    worst = 0.0
    values = []
    for eps in (0.2, 0.1, 0.05):
        d1 = glue.polygon_glued_distance(P, a, b, eps).value
        d2 = glue.polygon_glued_distance(P, [0.0, 0.0], a, eps).value
        values.append((round(d1, 6), round(d2, 6)))
        worst = max(worst, abs(d1 - 1) / (2 * eps), abs(d2 - 1) / (3 * eps))
    record(9, worst <= 1, f"(mid-mid, vertex-mid) at eps 0.2, 0.1, 0.05: {values}; worst dev/tol {worst:.3f}")


def test_10_rough_volume():
    eps = np.geomspace(0.005, 0.05, 4)
    rng = np.random.default_rng(1010)
    sq = cmp.rough_volume_estimate(cmp.EuclideanRegion.unit_square(), eps, rng)
    disk = cmp.rough_volume_estimate(cmp.EuclideanRegion.unit_disk(), eps, rng)
    seg = cmp.rough_volume_estimate(cmp.EuclideanRegion.segment(), eps / 5, rng)
    ok = (
        abs(sq.exponent - 2) <= 0.1
        and abs(disk.exponent - 2) <= 0.1
        and abs(seg.exponent - 1) <= 0.05
        and max(sq.flatness, disk.flatness, seg.flatness) <= 0.1
    )
    record(10, ok, f"exponents square {sq.exponent:.3f}, disk {disk.exponent:.3f}, segment {seg.exponent:.3f}; "
           f"flatness {sq.flatness:.3f}, {disk.flatness:.3f}, {seg.flatness:.3f}")


def test_11_determinism(tmp_path):
    outputs = {}
    for fmt in ("json", "csv"):
        for k in range(2):
            dest = tmp_path / f"{fmt}{k}"
            proc = subprocess.run(
                [sys.executable, "-m", "kcone", "lemma-suite", "--seed", "7", "--format", fmt, "--out", str(dest)],
                capture_output=True,
            )
            assert proc.returncode in (0, 1), proc.stderr
            outputs[fmt, k] = dest.read_bytes()
    same = all(outputs[f, 0] == outputs[f, 1] for f in ("json", "csv"))
    record(11, same, f"two runs per format byte-identical: {same} ({len(outputs['json', 0])} / {len(outputs['csv', 0])} bytes)")
