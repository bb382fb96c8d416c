"""Planar harmonic maps ``f = g + conj(h)`` on the closed unit disk."""

import math
from dataclasses import dataclass

import numpy as np

from .analytic_core import ComplexSeries, series_product
from .errors import DegeneratePointError, NotQuasiregularError

# Returned by initial_angle when f(0) = 0.
NONE_ANGLE = None

DEGENERATE_TOL = 1e-14


@dataclass(frozen=True)
class PlanarHarmonicMap:
    g: ComplexSeries
    h: ComplexSeries

    def __post_init__(self):
        if not isinstance(self.g, ComplexSeries):
            object.__setattr__(self, "g", ComplexSeries(self.g))
        if not isinstance(self.h, ComplexSeries):
            object.__setattr__(self, "h", ComplexSeries(self.h))

    def __call__(self, z):
        return self.g(z) + np.conj(self.h(z))

    @property
    def degree(self):
        return max(self.g.degree, self.h.degree)

    @property
    def u_series(self):
        """Analytic ``F`` with ``Re f = Re F`` (namely ``g + h``)."""
        return self.g + self.h

    @property
    def v_series(self):
        """Analytic ``F`` with ``Im f = Re F`` (namely ``-i (g - h)``)."""
        return (self.g - self.h) * (-1j)

    def to_dict(self):
        return {"kind": "planar", "g": self.g.to_pairs(), "h": self.h.to_pairs()}


def k_to_K(k):
    return (1.0 + k) / (1.0 - k)


def K_to_k(K):
    return (K - 1.0) / (K + 1.0)


def eval_map(m, z):
    """Return ``(f, u, v)`` at ``z``."""
    f = m(z)
    return f, np.real(f), np.imag(f)


def dilatation(m, z):
    """Second complex dilatation modulus ``|h'(z)| / |g'(z)|``."""
    gp = m.g.derivative()(z)
    hp = m.h.derivative()(z)
    agp = np.abs(gp)
    bad = agp < DEGENERATE_TOL
    if np.any(bad):
        zz = np.asarray(z)
        raise DegeneratePointError(complex(zz[bad].ravel()[0]) if zz.ndim else complex(zz))
    out = np.abs(hp) / agp
    return float(out) if np.ndim(out) == 0 else out


def polar_grid(n_radii, n_angles, r_max=1.0):
    """Points ``r_max * i/n_radii * exp(2 pi i j / n_angles)``, i = 0..n_radii."""
    r = r_max * np.arange(n_radii + 1) / n_radii
    t = (np.arange(n_angles) * (2.0 * math.pi)) / n_angles
    return (r[:, None] * np.exp(1j * t)[None, :]).ravel()


def qr_bound(m, n_radii=32, n_angles=512):
    """Grid supremum of the dilatation and the matching constant ``K``.

    The dilatation ``h'/g'`` is holomorphic wherever ``g'`` is zero-free, so
    its modulus peaks on the boundary circle; interior radii are scanned too.
    A constant map has ``Df = 0`` everywhere and counts as 1-quasiregular.
    """
    if not np.any(m.g.coeffs[1:]) and not np.any(m.h.coeffs[1:]):
        return 0.0, 1.0
    z = polar_grid(n_radii, n_angles)
    k_sup = float(np.max(dilatation(m, z)))
    if k_sup >= 1.0 - 1e-12:
        raise NotQuasiregularError(f"sampled dilatation reaches {k_sup!r}")
    return k_sup, k_to_K(k_sup)


def make_qr_map(g, omega, n_radii=32, n_angles=512):
    """Harmonic map with ``h' = omega * g'``, hence dilatation ``|omega|``."""
    z = polar_grid(n_radii, n_angles)
    sup = float(np.max(np.abs(omega(z))))
    if sup >= 1.0:
        raise NotQuasiregularError(f"sup |omega| on the grid is {sup!r} >= 1")
    h = series_product(omega, g.derivative()).antiderivative()
    return PlanarHarmonicMap(g, h)


def grad_u_squared(m, z):
    """``|grad Re f|^2 = |g' + h'|^2``."""
    out = np.abs(m.g.derivative()(z) + m.h.derivative()(z)) ** 2
    return float(out) if np.ndim(out) == 0 else out


def range_avoids_negative_axis(m, n_radii=64, n_angles=1024, margin=1e-9):
    """Grid certificate that ``f`` stays off the negative real axis.

    True iff every grid value has ``Re f > -margin`` or ``|Im f| > margin``.
    This is a sampled check, not a proof.
    """
    w = m(polar_grid(n_radii, n_angles))
    return bool(np.all((w.real > -margin) | (np.abs(w.imag) > margin)))


def min_modulus_on_grid(m, n_radii=64, n_angles=1024):
    return float(np.min(np.abs(m(polar_grid(n_radii, n_angles)))))


def initial_angle(m, tol=1e-14):
    """Principal argument of ``f(0)``, or ``NONE_ANGLE`` if ``f(0) = 0``."""
    f0 = complex(m(0.0))
    if abs(f0) <= tol:
        return NONE_ANGLE
    theta = math.atan2(f0.imag, f0.real)
    # atan2(-0.0, x<0) gives -pi; the range is (-pi, pi]
    return math.pi if theta == -math.pi else theta
