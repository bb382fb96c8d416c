import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qrlab.analytic_core import ComplexSeries
from qrlab.errors import DomainError, QuadratureError
from qrlab.planar_harmonic import PlanarHarmonicMap
from qrlab.quadrature import (DEFAULT_SPEC, QuadratureSpec, ball_green_integral_3d, circle_mean,
                              disk_green_integral, gauss_log_rule, hardy_norm, sphere_mean_3d,
                              sphere_rule_3d)

from conftest import random_map

S = ComplexSeries


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(n_angles=4)
    with pytest.raises(ValueError):
        QuadratureSpec(n_radial=2)
    with pytest.raises(ValueError):
        QuadratureSpec(rule="simpson")
    assert DEFAULT_SPEC.to_dict()["n_angles"] == 4096


def test_circle_mean_examples():
    assert circle_mean(lambda z: 3.0 + 0 * z.real) == 3.0
    assert abs(circle_mean(lambda z: (z.real / np.abs(z)) ** 2, 0.4) - 0.5) < 1e-15
    f = PlanarHarmonicMap(S([0, 1]), S([0, 0.5]))
    assert abs(circle_mean(lambda z: np.abs(f(z)) ** 2) - 1.25) < 1e-15


def test_circle_mean_reports_bad_node():
    with pytest.raises(QuadratureError) as exc:
        circle_mean(lambda z: np.where(np.arange(z.size) == 5, np.nan, 1.0))
    assert exc.value.index == 5


def test_gauss_log_rule_moments():
    for n in (16, 64, 256):
        r, w = gauss_log_rule(n)
        assert abs(np.sum(w) - 1.0) < 1e-14
        for k in range(0, 2 * min(n, 20)):
            assert abs(np.sum(w * r**k) - 1.0 / (k + 1) ** 2) < 1e-13


def test_disk_green_examples():
    for nr in (16, 64, 256):
        spec = QuadratureSpec(n_angles=64, n_radial=nr)
        assert abs(disk_green_integral(lambda z: 1.0 + 0 * z.real, spec) - 0.25) <= 1e-12
    assert abs(disk_green_integral(lambda z: np.abs(z) ** 2) - 1 / 16) < 1e-14
    # p = 2 identity for u = Re z: 2 |grad u|^2 = 2
    assert abs(disk_green_integral(lambda z: 2.0 + 0 * z.real) - 0.5) < 1e-14


def test_sphere_examples():
    assert abs(sphere_mean_3d(lambda x: 2.5 + 0 * x[:, 0]) - 2.5) < 1e-14
    assert abs(sphere_mean_3d(lambda x: x[:, 0] ** 2) - 1 / 3) < 1e-14
    assert abs(sphere_mean_3d(lambda x: x[:, 0] * x[:, 1])) < 1e-15
    pts, w = sphere_rule_3d()
    assert abs(np.sum(w) - 1.0) < 1e-14
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0)


def test_sphere_rule_with_axis_and_breaks():
    axis = np.array([1.0, 2.0, -0.5])
    pts, w = sphere_rule_3d(axis=axis, polar_breaks=(-0.3, 0.4))
    assert abs(np.sum(w) - 1.0) < 1e-14
    assert abs(np.sum(w * pts[:, 2] ** 2) - 1 / 3) < 1e-14
    # |<x, a>| is uniform on [-1, 1] for the unit axis: mean |s| = 1/2
    a = axis / np.linalg.norm(axis)
    pts, w = sphere_rule_3d(axis=axis, polar_breaks=(0.0,))
    assert abs(np.sum(w * np.abs(pts @ a)) - 0.5) < 1e-14


def test_ball_green_examples():
    assert abs(ball_green_integral_3d(lambda x: 1.0 + 0 * x[:, 0]) - 1 / 6) < 1e-14
    assert abs(ball_green_integral_3d(lambda x: 2.0 + 0 * x[:, 0]) - 1 / 3) < 1e-14
    assert ball_green_integral_3d(lambda x: 0 * x[:, 0]) == 0.0


def test_hardy_norm_examples():
    for m in range(4):
        z_m = S([0] * m + [1])
        for p in (1.2, 2.0):
            for r in (0.5, 1.0):
                assert abs(hardy_norm(z_m, p, r) - r**m) < 1e-14
    f = PlanarHarmonicMap(S([0, 1]), S([0, 0.5]))
    assert abs(hardy_norm(f, 2.0) - math.sqrt(1.25)) < 1e-14
    assert abs(hardy_norm(lambda x: x[:, 0], 2.0, dim=3) - math.sqrt(1 / 3)) < 1e-14
    with pytest.raises(DomainError):
        hardy_norm(f, 2.5)


def test_hardy_norm_degraded_flag():
    _, info = hardy_norm(S([0, 1]), 1.5, return_info=True)
    assert not info["degraded"]
    _, info = hardy_norm(S([1, 1]), 1.5, return_info=True)
    assert info["degraded"]


def test_means_monotone_in_radius(rng):
    for _ in range(10):
        m = random_map(rng, 6)
        for p in (1.25, 1.5, 2.0):
            means = [hardy_norm(m, p, r) for r in np.arange(1, 11) / 10]
            assert all(b >= a - 1e-12 for a, b in zip(means, means[1:]))


@given(st.integers(0, 2**32 - 1), st.sampled_from([1.25, 1.5, 2.0]))
def test_circle_mean_converged(seed, p):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, 9))
    m = random_map(rng, d)
    m = PlanarHarmonicMap(m.g + S([3.0]), m.h)  # zero-free on the circle
    n = 64 * (d + 1)
    a = hardy_norm(m, p, spec=QuadratureSpec(n_angles=n))
    b = hardy_norm(m, p, spec=QuadratureSpec(n_angles=2 * n))
    assert abs(a**p - b**p) <= 1e-10 * b**p


def test_refinement_stability():
    coarse, fine = QuadratureSpec(n_angles=1024, n_radial=64), QuadratureSpec(n_angles=2048, n_radial=128)
    f = PlanarHarmonicMap(S([0.5, 1, 0.3j]), S([0, 0.2]))
    psi = lambda z: np.abs(f(z)) ** 2 + np.abs(z) ** 3
    a, b = disk_green_integral(psi, coarse), disk_green_integral(psi, fine)
    assert abs(a - b) <= 1e-8 * abs(b)


def test_determinism():
    psi = lambda z: np.cos(z.real) * np.exp(z.imag)
    assert disk_green_integral(psi) == disk_green_integral(psi)
