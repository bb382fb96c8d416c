"""Harmonic maps of the unit ball in R^n, Poisson kernel and Green function."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError, SingularMatrixError


@dataclass(frozen=True, eq=False)
class LinearBallMap:
    """``x -> A x + b`` on the unit ball; every component is harmonic."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 2:
            raise ValueError(f"A must be a square matrix of size >= 2, got shape {A.shape}")
        b = np.zeros(A.shape[0]) if self.b is None else np.array(self.b, dtype=float).ravel()
        if b.shape != (A.shape[0],):
            raise ValueError(f"b must have length {A.shape[0]}, got {b.shape}")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def n(self):
        return self.A.shape[0]

    def __call__(self, x):
        return np.asarray(x, dtype=float) @ self.A.T + self.b

    def __eq__(self, other):
        if not isinstance(other, LinearBallMap):
            return NotImplemented
        return np.array_equal(self.A, other.A) and np.array_equal(self.b, other.b)

    def to_dict(self):
        return {"kind": "ball-linear", "n": self.n,
                "A": self.A.ravel().tolist(), "b": self.b.tolist()}


def identity_map(n):
    return LinearBallMap(np.eye(n), np.zeros(n))


def singular_norms(A):
    """``(|A|, l(A), ||A||)``: largest and smallest singular values, Hilbert norm."""
    A = np.asarray(A, dtype=float)
    s = np.linalg.svd(A, compute_uv=False)
    return float(s[0]), float(s[-1]), float(math.sqrt(np.sum(s * s)))


def qr_constant_linear(A):
    """Least ``K`` with ``|A| <= K l(A)``."""
    op, ell, _ = singular_norms(A)
    if ell <= 1e-14 * op or op == 0.0:
        raise SingularMatrixError("matrix is singular; the linear map is not quasiregular")
    return op / ell


def unit_sphere_area(n):
    """Surface measure of the unit sphere in R^n."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def green_constant(n):
    """``1 / ((n - 2) * area(S^{n-1}))`` for n >= 3."""
    if n < 3:
        raise ValueError("the power-law Green constant needs n >= 3")
    return 1.0 / ((n - 2) * unit_sphere_area(n))


def _as_points(x, n):
    x = np.asarray(x)
    if np.iscomplexobj(x):
        if n != 2:
            raise ValueError("complex points only make sense for n = 2")
        x = np.stack([x.real, x.imag], axis=-1)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != n:
        raise ValueError(f"expected points with {n} coordinates, got shape {x.shape}")
    return x


def poisson_kernel(x, eta, n):
    """``(1 - |x|^2) / |x - eta|^n``; broadcasts over leading axes."""
    x = _as_points(x, n)
    eta = _as_points(eta, n)
    num = 1.0 - np.sum(x * x, axis=-1)
    out = num / np.sqrt(np.sum((x - eta) ** 2, axis=-1)) ** n
    return float(out) if np.ndim(out) == 0 else out


def green_function(x, y, n):
    """Green function of the unit ball, positive inside, zero on the sphere.

    ``n = 2``: ``(1/2pi) log(|1 - x conj(y)| / |x - y|)``.
    ``n >= 3``: ``c_n (|x-y|^{2-n} - (1 + |x|^2|y|^2 - 2<x,y>)^{(2-n)/2})``.
    Both satisfy ``Delta_x G = -delta_y``.
    """
    x = _as_points(x, n)
    y = _as_points(y, n)
    d2 = np.sum((x - y) ** 2, axis=-1)
    if np.any(d2 == 0.0):
        raise CoincidentPointsError("Green function evaluated at coincident points")
    xx = np.sum(x * x, axis=-1)
    yy = np.sum(y * y, axis=-1)
    xy = np.sum(x * y, axis=-1)
    # |1 - x conj(y)|^2 for n = 2 equals the bracket below
    bracket = 1.0 + xx * yy - 2.0 * xy
    if n == 2:
        out = np.log(bracket / d2) / (4.0 * math.pi)
    else:
        e = (n - 2) / 2.0
        out = green_constant(n) * (d2 ** -e - bracket ** -e)
    return float(out) if np.ndim(out) == 0 else out
