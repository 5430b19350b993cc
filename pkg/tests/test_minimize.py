import math

import numpy as np
import pytest

from oracles import fd_gradient

from riesz_zeros.energy import energy, mc_expected_energy
from riesz_zeros.minimize import (OptimizerConfig, c_n_extract, c_n_of_config, energy_gradient,
                                  local_minimize, minimize_energy, spiral_points)
from riesz_zeros.predictions import log_energy_lower_bound
from riesz_zeros.sphere import (HALF, UNIT, Kernel, PointConfig, SphereConfig, random_rotation,
                                uniform_points)

KERNELS = [Kernel.log_chordal(), Kernel.log_geodesic(), Kernel.green(), Kernel.riesz(0.5),
           Kernel.riesz(1.5), Kernel.log_chordal("ordered")]
TETRA = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3)


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: f"{k.variant}-{k.s}-{k.pair_counting}")
@pytest.mark.parametrize("radius", [0.5, 1.0])
def test_gradient_matches_finite_differences(kernel, radius):
    rng = np.random.default_rng(11)
    for _ in range(10):
        cfg = uniform_points(12, SphereConfig(radius), rng)
        g = energy_gradient(cfg, kernel)
        fd = fd_gradient(cfg, kernel)
        assert np.linalg.norm(g - fd) <= 1e-6 * max(1.0, np.linalg.norm(fd))


@pytest.mark.parametrize("kernel", KERNELS[:5], ids=lambda k: f"{k.variant}-{k.s}")
def test_symmetric_configs_are_critical(kernel):
    anti = PointConfig(np.array([[0, 0, 0.5], [0, 0, -0.5]]), 0.5)
    assert np.linalg.norm(energy_gradient(anti, kernel)) < 1e-12
    tet = PointConfig(0.5 * TETRA, 0.5)
    assert np.linalg.norm(energy_gradient(tet, kernel)) < 1e-12


def test_two_points_go_antipodal():
    res = minimize_energy(2, Kernel.log_chordal(), OptimizerConfig(restarts=2), seed=1)
    assert res.energy == pytest.approx(0.0, abs=1e-12)
    assert np.linalg.norm(res.config.points[0] + res.config.points[1]) < 1e-6


@pytest.mark.parametrize("kernel", [Kernel.log_chordal(), Kernel.riesz(0.5), Kernel.riesz(1.0),
                                    Kernel.riesz(1.5)], ids=lambda k: f"{k.variant}-{k.s}")
def test_four_points_form_tetrahedron(kernel):
    res = minimize_energy(4, kernel, OptimizerConfig(restarts=4), seed=3)
    target = energy(PointConfig(0.5 * TETRA, 0.5), kernel)
    assert res.energy == pytest.approx(target, abs=1e-6)
    assert res.converged
    p = res.config.points
    d = np.linalg.norm(p[:, None] - p[None], axis=-1)[np.triu_indices(4, 1)]
    assert d.max() - d.min() <= 1e-6


@pytest.mark.parametrize("kernel", [Kernel.log_geodesic(), Kernel.green()], ids=lambda k: k.variant)
def test_four_points_geodesic_log_prefers_square(kernel):
    # for -log of arc length the equatorial square beats the tetrahedron
    square = 0.5 * np.array([[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]], dtype=float)
    res = minimize_energy(4, kernel, OptimizerConfig(restarts=4), seed=3)
    assert res.energy == pytest.approx(energy(PointConfig(square, 0.5), kernel), abs=1e-6)
    assert res.energy < energy(PointConfig(0.5 * TETRA, 0.5), kernel)


def test_history_monotone_and_reproducible():
    start = uniform_points(30, HALF, np.random.default_rng(5))
    res = local_minimize(start, Kernel.riesz(1.0))
    hist = [h for h in res.history if h is not None]
    assert all(b <= a + 1e-12 * abs(a) for a, b in zip(hist, hist[1:]))
    again = local_minimize(start, Kernel.riesz(1.0))
    assert again.energy == res.energy


def test_rotated_start_same_minimum():
    kernel = Kernel.log_chordal()
    start = uniform_points(20, HALF, np.random.default_rng(21))
    rot = random_rotation(np.random.default_rng(22))
    turned = PointConfig(start.points @ rot.T, 0.5, validate=False)
    a = local_minimize(start, kernel)
    b = local_minimize(turned, kernel)
    assert a.energy == pytest.approx(b.energy, abs=1e-8)


def test_minimum_below_random_zero_mean():
    kernel = Kernel.log_chordal("ordered")
    for n in (10, 20):
        best = minimize_energy(n, kernel, OptimizerConfig(restarts=3), seed=n)
        mc = mc_expected_energy(n, kernel, 500, seed=n)
        assert best.energy <= mc.mean - 3 * mc.std_error


@pytest.mark.parametrize("n", [10, 30, 60])
def test_log_energy_lower_bound_holds(n):
    res = minimize_energy(n, Kernel.log_chordal(), OptimizerConfig(restarts=3), seed=n, cfg=UNIT)
    assert res.energy >= log_energy_lower_bound(n)
    assert c_n_extract(res) < c_n_of_config(uniform_points(n, UNIT, np.random.default_rng(n)))


def test_c_n_approaches_conjectured_constant():
    # 2 log 2 + log(2/3)/2 + 3 log(sqrt(pi)/Gamma(1/3)) for ordered pairs, halved
    limit = 0.5 * (2 * math.log(2) + 0.5 * math.log(2 / 3)
                   + 3 * math.log(math.sqrt(math.pi) / math.gamma(1 / 3)))
    c30 = c_n_extract(minimize_energy(30, Kernel.log_chordal(), OptimizerConfig(restarts=3), 30, UNIT))
    c60 = c_n_extract(minimize_energy(60, Kernel.log_chordal(), OptimizerConfig(restarts=3), 60, UNIT))
    assert limit < c60 < c30 < 0
    assert abs(c60 - limit) < 0.005


def test_c_n_extract_guards():
    res = minimize_energy(6, Kernel.log_chordal(), OptimizerConfig(restarts=2), seed=0)
    with pytest.raises(ValueError):
        c_n_extract(res)
    res = minimize_energy(6, Kernel.riesz(1.0), OptimizerConfig(restarts=2), seed=0, cfg=UNIT)
    with pytest.raises(ValueError):
        c_n_extract(res)
    ordered = minimize_energy(6, Kernel.log_chordal("ordered"), OptimizerConfig(restarts=2), seed=0,
                              cfg=UNIT)
    unordered = minimize_energy(6, Kernel.log_chordal(), OptimizerConfig(restarts=2), seed=0, cfg=UNIT)
    assert c_n_extract(ordered) == pytest.approx(c_n_extract(unordered), abs=1e-9)


def test_spiral_and_config_validation():
    sp = spiral_points(50, HALF)
    assert np.allclose(np.linalg.norm(sp.points, axis=1), 0.5)
    with pytest.raises(ValueError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(initial="grid")
    with pytest.raises(ValueError):
        minimize_energy(1, Kernel.log_chordal())


def test_from_zeros_start():
    res = minimize_energy(12, Kernel.log_chordal(), OptimizerConfig(restarts=2, initial="from_zeros"),
                          seed=4)
    assert res.converged
