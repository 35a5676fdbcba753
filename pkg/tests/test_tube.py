import math

import numpy as np
import pytest
from scipy import integrate

from kcone import tube
from kcone.errors import ExpansionDomainError, InvalidArgument
from oracles import TRAPEZOID_DISK_HALF, TWO_BALL_UNION_3D_GAP_1, TWO_DISK_UNION_GAP_1


def test_two_disks_gap_one():
    v = tube.tube_volume_exact(tube.BallChain(2, 1.0, [1.0]))
    assert v == pytest.approx(4 * math.pi / 3 + math.sqrt(3) / 2, abs=1e-9)
    assert v == pytest.approx(TWO_DISK_UNION_GAP_1, abs=1e-12)


def test_two_balls_in_three_dimensions():
    assert tube.tube_volume_exact(tube.BallChain(3, 1.0, [1.0])) == pytest.approx(TWO_BALL_UNION_3D_GAP_1, abs=1e-12)


def test_lens_formula_matches_closed_form():
    for n in (2, 3):
        for d in np.linspace(0.05, 1.95, 15):
            exact = tube.tube_volume_exact(tube.BallChain(n, 1.0, [d]))
            assert exact == pytest.approx(tube.two_ball_union_closed_form(n, 1.0, d), abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_flat_cut_is_half_ball(n):
    for r in (0.5, 1.0, 3.0):
        assert tube.trapezoidal_ball_volume(n, r, r) == pytest.approx(tube.euclidean_ball_volume(n, r) / 2, rel=1e-12)


def test_trapezoid_disk_frozen():
    assert tube.trapezoidal_ball_volume(2, 1.0, 0.5) == pytest.approx(TRAPEZOID_DISK_HALF, abs=1e-12)


def test_trapezoid_against_scipy_quad():
    # slab volume: int_0^h vol B^{n-1}(sqrt(r^2 - y^2)) dy
    for n in (3, 4):
        r, h = 1.3, 0.7
        ref, _ = integrate.quad(lambda y: tube.euclidean_ball_volume(n - 1, math.sqrt(r * r - y * y)), 0, h, epsabs=1e-13)
        assert tube.trapezoidal_ball_volume(n, r, h) == pytest.approx(ref, rel=1e-11)


def test_sin_power_tail():
    assert tube.sin_power_tail(2, 0.0) == pytest.approx(math.pi / 4)
    assert tube.sin_power_tail(3, math.pi / 2) == 0.0
    ref, _ = integrate.quad(lambda t: math.sin(t) ** 7, 0.4, math.pi / 2, epsabs=1e-14)
    assert tube.sin_power_tail(7, 0.4) == pytest.approx(ref, rel=1e-12)


def test_chain_validation():
    with pytest.raises(InvalidArgument):
        tube.BallChain(1, 1.0, [0.5])
    with pytest.raises(InvalidArgument):
        tube.BallChain(2, 1.0, [2.0])
    with pytest.raises(InvalidArgument):
        tube.BallChain(2, 1.0, [0.0])
    assert tube.BallChain(3, 0.5, [0.1, 0.2]).count == 3


def test_expansion_bound_holds_on_random_chains():
    rng = np.random.default_rng(11)
    for _ in range(40):
        n = int(rng.integers(2, 6))
        eps = float(rng.uniform(0.05, 0.6))
        gaps = rng.uniform(0.01, 1.0, int(rng.integers(1, 15))) * eps * eps
        chain = tube.BallChain(n, eps, gaps)
        value, bound = tube.tube_volume_expansion(chain)
        assert abs(value - tube.tube_volume_exact(chain)) <= bound


def test_expansion_rejects_large_gaps():
    with pytest.raises(ExpansionDomainError):
        tube.tube_volume_expansion(tube.BallChain(2, 0.5, [0.3]))


def test_union_grows_with_gap():
    g = np.linspace(0.01, 1.99, 100)
    v = [tube.tube_volume_exact(tube.BallChain(2, 1.0, [x, 0.5])) for x in g]
    assert np.all(np.diff(v) > 0)


def test_chain_matches_monte_carlo():
    gaps = [0.8, 1.2, 0.5]
    exact = tube.tube_volume_exact(tube.BallChain(3, 1.0, gaps))
    est = tube.union_volume_mc(3, 1.0, tube.collinear_centers(3, gaps), 300_000, seed=4)
    assert est.agrees_with(exact)


def test_overlap_report():
    rep = tube.chain_overlap_report(tube.collinear_centers(2, [0.8] * 4), 1.0)
    assert rep["collinear"] and rep["formula_exact"]
    assert (0, 2) in rep["nonconsecutive_overlaps"]
    bent = np.array([[0, 0], [1.2, 0], [1.2, 1.2]])
    rep = tube.chain_overlap_report(bent, 1.0)
    assert not rep["collinear"]
    assert rep["nonconsecutive_overlaps"] == [(0, 2)]
    assert not rep["formula_exact"]
    apart = np.array([[0, 0], [1.5, 0], [1.5, 1.9], [3.0, 3.5]])
    assert tube.chain_overlap_report(apart, 0.9)["formula_exact"]
