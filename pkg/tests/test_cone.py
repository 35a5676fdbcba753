import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kcone.cone import ConePoint, ConeSpace, annulus_volume, base_angle_check, cone_ball_volume, cone_distance, flat_cone_geodesic
from kcone.dirspace import Circle, Interval, Sphere, Suspension
from kcone.errors import InvalidArgument
from kcone.spaceform import sn_power_integral
from oracles import CONE_BALL_INTERVAL1_KM1_R12, CONE_BALL_S2_K1_R1, CONE_BALL_SUSP_CIRCLE_KMHALF_R15


def test_flat_disk_and_round_sphere_volumes():
    assert cone_ball_volume(ConeSpace(Circle(), 0.0, 1.0), 1.0).value == pytest.approx(math.pi, abs=1e-9)
    assert cone_ball_volume(ConeSpace(Circle(), 1.0, math.pi), math.pi).value == pytest.approx(4 * math.pi, abs=1e-9)


@pytest.mark.parametrize(
    "cone,r,expected",
    [
        (ConeSpace(Sphere(2), 1.0, 1.5), 1.0, CONE_BALL_S2_K1_R1),
        (ConeSpace(Interval(1.0), -1.0, 2.0), 1.2, CONE_BALL_INTERVAL1_KM1_R12),
        (ConeSpace(Suspension(Circle()), -0.5, 1.5), 1.5, CONE_BALL_SUSP_CIRCLE_KMHALF_R15),
    ],
)
def test_ball_volume_against_frozen_oracle(cone, r, expected):
    est = cone.ball_volume(r)
    assert est.method == "quadrature"
    assert est.value == pytest.approx(expected, abs=1e-9)
    assert est.error <= 1e-9


def test_quadrature_agrees_with_reduction_formula():
    for kappa, sigma, R in ((1.0, Sphere(3), 2.0), (-2.0, Sphere(2), 1.3), (0.0, Interval(0.7), 3.0)):
        C = ConeSpace(sigma, kappa, R)
        closed = sigma.volume() * sn_power_integral(kappa, sigma.dim, 0.4, R)
        assert annulus_volume(C, 0.4, R).value == pytest.approx(closed, rel=1e-10)


def test_ball_volume_mc_within_four_sigma():
    C = ConeSpace(Sphere(2), 1.0, 1.5)
    est = C.ball_volume_mc(1.0, 200_000, seed=5)
    assert est.agrees_with(CONE_BALL_S2_K1_R1)
    again = C.ball_volume_mc(1.0, 200_000, seed=5)
    assert est == again


def test_distance_special_cases():
    C = ConeSpace(Circle(), 0.0, 2.0)
    assert cone_distance(C, ([0.0], 1.0), ([math.pi], 1.0)) == pytest.approx(2.0)
    assert cone_distance(C, ([0.0], 0.0), ([1.0], 1.5)) == 1.5
    assert cone_distance(C, ([0.3], 0.5), ([0.3], 1.7)) == pytest.approx(1.2)
    # the far pole of a spherical cone is a single point
    S = ConeSpace(Sphere(2), 1.0, math.pi)
    assert cone_distance(S, ([1, 0, 0], math.pi), ([0, 1, 0], 1.0)) == pytest.approx(math.pi - 1.0)


def test_angles_beyond_pi_are_capped():
    C = ConeSpace(Circle(), 0.0, 1.0)
    # antipodal directions are straight through the apex
    assert cone_distance(C, ([0.0], 0.4), ([math.pi], 0.7)) == pytest.approx(1.1)


def test_flat_cone_geodesic_length():
    C = ConeSpace(Circle(5.0), 0.0, 2.0)
    a, b = ConePoint(np.array([0.2]), 1.0), ConePoint(np.array([1.4]), 1.5)
    pts, length = flat_cone_geodesic(C, a, b, interior=30)
    assert length == pytest.approx(C.distance(a, b), rel=1e-12)
    steps = [C.distance(p, q) for p, q in zip(pts, pts[1:])]
    assert sum(steps) == pytest.approx(length, rel=1e-9)
    assert base_angle_check(C, a, b) < 1e-6


def test_radius_guards():
    with pytest.raises(InvalidArgument):
        ConeSpace(Circle(), 1.0, 4.0)
    with pytest.raises(InvalidArgument):
        ConeSpace(Circle(), 0.0, -1.0)
    C = ConeSpace(Circle(), 0.0, 1.0)
    with pytest.raises(InvalidArgument):
        C.point([0.0], 1.5)
    with pytest.raises(InvalidArgument):
        C.annulus_volume(0.8, 0.2)


def test_rigidity_admissibility():
    assert ConeSpace(Circle(), 1.0, 1.0).rigidity_admissible
    assert ConeSpace(Circle(), 1.0, math.pi).rigidity_admissible
    assert not ConeSpace(Circle(), 1.0, 2.0).rigidity_admissible
    assert ConeSpace(Circle(), -1.0, 10.0).rigidity_admissible


def test_samples_respect_radius_law():
    C = ConeSpace(Circle(), 0.0, 1.0)
    t = C.sample(seed=3, size=100_000).t
    # flat disk: P(t <= 1/2) = 1/4
    assert abs(np.mean(t <= 0.5) - 0.25) < 4 * math.sqrt(0.25 * 0.75 / 1e5)


@given(
    kappa=st.sampled_from([-1.0, 0.0, 1.0]),
    a=st.floats(0, 2 * math.pi), b=st.floats(0, 2 * math.pi), c=st.floats(0, 2 * math.pi),
    s=st.floats(0, 1.5), t=st.floats(0, 1.5), u=st.floats(0, 1.5),
)
def test_cone_metric_triangle_inequality(kappa, a, b, c, s, t, u):
    C = ConeSpace(Circle(), kappa, 1.5)
    x, y, z = ([a], s), ([b], t), ([c], u)
    assert C.distance(x, z) <= C.distance(x, y) + C.distance(y, z) + 1e-12
    assert C.distance(x, y) == pytest.approx(C.distance(y, x), abs=1e-14)
