import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import ortho_group

from qrlab.ball_harmonic import (LinearBallMap, green_function, identity_map, poisson_kernel,
                                 qr_constant_linear, singular_norms, unit_sphere_area)
from qrlab.errors import CoincidentPointsError, SingularMatrixError
from qrlab.quadrature import QuadratureSpec, sphere_rule_3d


def jacobi_singular_values(A, sweeps=60):
    """One-sided Jacobi rotations: orthogonalize the columns, read off their norms."""
    U = np.array(A, dtype=float)
    n = U.shape[1]
    for _ in range(sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                a = U[:, i] @ U[:, i]
                b = U[:, j] @ U[:, j]
                c = U[:, i] @ U[:, j]
                off = max(off, abs(c) / math.sqrt(a * b) if a * b > 0 else 0.0)
                if c == 0.0:
                    continue
                zeta = (b - a) / (2.0 * c)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                cs = 1.0 / math.sqrt(1.0 + t * t)
                sn = cs * t
                ui = U[:, i].copy()
                U[:, i] = cs * ui - sn * U[:, j]
                U[:, j] = sn * ui + cs * U[:, j]
        if off < 1e-15:
            break
    return np.sort(np.linalg.norm(U, axis=0))[::-1]


@pytest.mark.parametrize("A, expected", [
    (np.eye(3), (1.0, 1.0, math.sqrt(3))),
    (np.diag([2.0, 1.0]), (2.0, 1.0, math.sqrt(5))),
    (np.diag([1.0, 1.0, 3.0]), (3.0, 1.0, math.sqrt(11))),
])
def test_singular_norms_examples(A, expected):
    assert np.allclose(singular_norms(A), expected, rtol=0, atol=1e-15)


@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_singular_values_match_jacobi_oracle(n, seed):
    A = np.random.default_rng(seed).normal(size=(n, n))
    s = jacobi_singular_values(A)
    op, ell, hs = singular_norms(A)
    assert abs(op - s[0]) <= 1e-12 * s[0]
    assert abs(ell - s[-1]) <= 1e-12 * s[0]
    assert abs(hs - math.sqrt(np.sum(s * s))) <= 1e-12 * s[0]
    # |Df|^2 >= ||Df||^2 / n
    assert op**2 >= hs**2 / n * (1 - 1e-14)


def test_qr_constant_examples():
    assert qr_constant_linear(np.eye(3)) == 1.0
    assert abs(qr_constant_linear(np.diag([1.0, 1.0, 2.0])) - 2.0) < 1e-15
    with pytest.raises(SingularMatrixError):
        qr_constant_linear(np.zeros((3, 3)))


def test_qr_constant_orthogonal_invariance():
    rng = np.random.default_rng(3)
    for _ in range(10):
        A = rng.normal(size=(3, 3))
        Q = ortho_group.rvs(3, random_state=rng)
        assert abs(qr_constant_linear(Q @ A) - qr_constant_linear(A)) <= 1e-12 * qr_constant_linear(A)


def test_linear_map_basics():
    m = LinearBallMap(np.diag([1.0, 2.0, 3.0]), [1.0, 0.0, -1.0])
    assert np.array_equal(m(np.zeros(3)), [1.0, 0.0, -1.0])
    assert m == LinearBallMap(np.diag([1.0, 2.0, 3.0]), [1.0, 0.0, -1.0])
    assert identity_map(4).n == 4
    with pytest.raises(ValueError):
        LinearBallMap(np.ones((2, 3)), None)


def test_linear_map_equality_in_K():
    rng = np.random.default_rng(8)
    A = rng.normal(size=(3, 3))
    op, ell, _ = singular_norms(A)
    assert abs(op - qr_constant_linear(A) * ell) <= 1e-14 * op


def test_poisson_examples():
    eta = np.array([0.6, 0.8])
    assert poisson_kernel(np.zeros(2), eta, 2) == 1.0
    assert poisson_kernel(np.zeros(3), np.array([0, 0, 1.0]), 3) == 1.0
    assert abs(poisson_kernel(np.array([0.5, 0.0]), np.array([1.0, 0.0]), 2) - 3.0) < 1e-15
    assert abs(poisson_kernel(0.5 + 0j, 1.0 + 0j, 2) - 3.0) < 1e-15


@pytest.mark.parametrize("x", [np.zeros(3), np.array([0.3, -0.2, 0.1]), np.array([0.0, 0.8, 0.0]),
                               np.array([0.46, 0.46, 0.46])])
def test_poisson_mean_is_one(x):
    pts, w = sphere_rule_3d(QuadratureSpec(), axis=x if np.any(x) else None)
    assert abs(np.sum(w * poisson_kernel(x[None, :], pts, 3)) - 1.0) <= 1e-10


def test_green_boundary_vanishing():
    rng = np.random.default_rng(1)
    for _ in range(20):
        x = 0.9 * rng.uniform() * np.exp(2j * math.pi * rng.uniform())
        y = np.exp(2j * math.pi * rng.uniform())
        assert abs(green_function(x, y, 2)) < 1e-14
        x3 = rng.normal(size=3)
        x3 *= 0.9 * rng.uniform() / np.linalg.norm(x3)
        y3 = rng.normal(size=3)
        y3 /= np.linalg.norm(y3)
        assert abs(green_function(x3, y3, 3)) < 1e-14


def test_green_examples():
    assert abs(green_function(np.zeros(3), np.array([0.5, 0, 0]), 3) - 1 / (4 * math.pi)) < 1e-15
    assert abs(green_function(0j, 0.5 + 0j, 2) - math.log(2) / (2 * math.pi)) < 1e-15
    assert abs(unit_sphere_area(3) - 4 * math.pi) < 1e-14
    with pytest.raises(CoincidentPointsError):
        green_function(0.1 + 0j, 0.1 + 0j, 2)


def test_green_symmetric_and_positive():
    rng = np.random.default_rng(2)
    for n in (2, 3):
        for _ in range(100):
            x, y = rng.normal(size=(2, n))
            x *= 0.95 * rng.uniform() / np.linalg.norm(x)
            y *= 0.95 * rng.uniform() / np.linalg.norm(y)
            gxy, gyx = green_function(x, y, n), green_function(y, x, n)
            assert abs(gxy - gyx) <= 1e-13 * max(1.0, abs(gxy))
            assert gxy > 0


def test_green_is_fundamental_solution_2d():
    # Delta_x G = 0 away from y (5-point stencil)
    y, x, h = 0.2 + 0.1j, -0.3 + 0.4j, 1e-3
    lap = (green_function(x + h, y, 2) + green_function(x - h, y, 2) + green_function(x + 1j * h, y, 2)
           + green_function(x - 1j * h, y, 2) - 4 * green_function(x, y, 2)) / h**2
    assert abs(lap) < 1e-6
