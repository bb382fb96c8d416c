"""Deterministic integration rules on the circle, disk, sphere and ball.

All means are normalized (the circle and sphere carry total mass 1).  Node
sets are fixed for a given :class:`QuadratureSpec`, and reductions are plain
``numpy`` sums over fixed arrays, so repeated runs are bit-identical.
"""

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy.linalg import eigh_tridiagonal

from .constants import check_p
from .errors import QuadratureError

RULES = ("trapezoid-circle", "gauss-radial", "zero-adapted")


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts for every rule.

    ``n_angles`` and ``n_radial`` drive the circle and disk rules;
    ``sphere_polar`` x ``sphere_azimuth`` is the product rule on S^2 and
    ``ball_radial`` the radial Gauss-Legendre order in the ball.  The
    ``panel_*`` fields control the zero-adapted rules of
    :mod:`qrlab.zero_adapted`.
    """

    n_angles: int = 4096
    n_radial: int = 256
    rule: str = "trapezoid-circle"
    sphere_polar: int = 128
    sphere_azimuth: int = 256
    ball_radial: int = 32
    panel_order: int = 10
    panel_levels: int = 14
    panel_ratio: float = 0.15

    def __post_init__(self):
        if self.n_angles < 8:
            raise ValueError(f"n_angles must be >= 8, got {self.n_angles}")
        if self.n_radial < 4:
            raise ValueError(f"n_radial must be >= 4, got {self.n_radial}")
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}; expected one of {RULES}")
        if min(self.sphere_polar, self.sphere_azimuth, self.ball_radial, self.panel_order) < 2:
            raise ValueError("node counts must be >= 2")
        if not 0.0 < self.panel_ratio < 1.0:
            raise ValueError("panel_ratio must lie in (0, 1)")

    def to_dict(self):
        return asdict(self)


DEFAULT_SPEC = QuadratureSpec()


def _spec(spec):
    return DEFAULT_SPEC if spec is None else spec


def checked(values):
    """Raise :class:`QuadratureError` at the first non-finite value."""
    values = np.asarray(values)
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = int(np.flatnonzero(bad.ravel())[0])
        raise QuadratureError(idx, values.ravel()[idx])
    return values


# -- circle -----------------------------------------------------------------

def circle_nodes(n):
    return (np.arange(n) * (2.0 * math.pi)) / n


def circle_mean(phi, r=1.0, spec=None):
    """Trapezoid mean ``(1/n) sum_j phi(r e^{2 pi i j/n})``.

    ``phi`` receives a complex array of nodes.
    """
    spec = _spec(spec)
    z = r * np.exp(1j * circle_nodes(spec.n_angles))
    return float(np.mean(checked(np.real(phi(z)))))


# -- disk with the planar Green weight ---------------------------------------

@lru_cache(maxsize=None)
def gauss_log_rule(n):
    """Gauss rule for ``int_0^1 f(r) log(1/r) dr``, exact to degree 2n-1.

    Recurrence coefficients come from the modified Chebyshev algorithm with
    shifted Legendre moments (run in extended precision), nodes and weights
    from the Jacobi matrix.
    """
    with mpmath.workdps(40):
        N = 2 * n
        mom = [mpmath.mpf(1)] + [
            (-1) ** k * mpmath.factorial(k) ** 2 / (k * (k + 1) * mpmath.factorial(2 * k))
            for k in range(1, N)
        ]
        a = [mpmath.mpf(1) / 2] * N
        b = [mpmath.mpf(1)] + [1 / (4 * (4 - mpmath.mpf(1) / k**2)) for k in range(1, N)]
        alpha = [mpmath.mpf(0)] * n
        beta = [mpmath.mpf(0)] * n
        alpha[0] = a[0] + mom[1] / mom[0]
        beta[0] = mom[0]
        prev = [mpmath.mpf(0)] * N
        cur = list(mom)
        for k in range(1, n):
            new = [mpmath.mpf(0)] * N
            for l in range(k, N - k):
                new[l] = (cur[l + 1] - (alpha[k - 1] - a[l]) * cur[l]
                          - beta[k - 1] * prev[l] + b[l] * cur[l - 1])
            alpha[k] = a[k] + new[k + 1] / new[k] - cur[k] / cur[k - 1]
            beta[k] = new[k] / cur[k - 1]
            prev, cur = cur, new
        al = np.array([float(x) for x in alpha])
        be = np.array([float(x) for x in beta])
    x, v = eigh_tridiagonal(al, np.sqrt(be[1:]))
    w = be[0] * v[0] ** 2
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def disk_green_integral(psi, spec=None):
    """``(1/2pi) int_D psi(z) log(1/|z|) dA(z)`` for continuous ``psi``.

    Radial nodes are Gauss nodes for the weight ``log(1/r)`` on (0, 1) (so
    the log endpoint is absorbed in the weights); the angle uses the
    trapezoid rule.  ``psi`` receives a complex array of shape
    ``(n_radial, n_angles)``.
    """
    spec = _spec(spec)
    r, w = gauss_log_rule(spec.n_radial)
    z = r[:, None] * np.exp(1j * circle_nodes(spec.n_angles))[None, :]
    vals = checked(np.real(psi(z)))
    return float(np.sum(w * r * np.mean(vals, axis=1)))


# -- sphere and ball in R^3 --------------------------------------------------

def _frame(axis):
    e3 = np.asarray(axis, dtype=float)
    e3 = e3 / np.linalg.norm(e3)
    trial = np.eye(3)[int(np.argmin(np.abs(e3)))]
    e1 = trial - np.dot(trial, e3) * e3
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(e3, e1)
    return np.stack([e1, e2, e3])


def _panel_gauss(edges, order):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = (hi - lo) / 2.0
    return ((lo + hi) / 2.0 + half * x).ravel(), (half * w).ravel()


def sphere_rule_3d(spec=None, axis=None, polar_breaks=()):
    """Normalized product rule on S^2.

    Gauss-Legendre in ``s = cos(theta)`` (split at ``polar_breaks`` in
    (-1, 1) when given) times the trapezoid rule in azimuth.  ``axis`` sets
    the polar direction.  Returns points ``(N, 3)`` and weights summing to 1.
    """
    spec = _spec(spec)
    breaks = sorted(b for b in polar_breaks if -1.0 < b < 1.0)
    edges = [-1.0, *breaks, 1.0]
    per = max(2, spec.sphere_polar // (len(edges) - 1))
    s, ws = _panel_gauss(edges, per)
    ws = ws / 2.0
    phi = circle_nodes(spec.sphere_azimuth)
    sin_t = np.sqrt(np.clip(1.0 - s * s, 0.0, None))
    pts = np.stack([
        sin_t[:, None] * np.cos(phi)[None, :],
        sin_t[:, None] * np.sin(phi)[None, :],
        np.broadcast_to(s[:, None], (s.size, phi.size)),
    ], axis=-1).reshape(-1, 3)
    w = np.repeat(ws / spec.sphere_azimuth, phi.size)
    if axis is not None:
        pts = pts @ _frame(axis)
    return pts, w


def sphere_mean_3d(phi, spec=None, axis=None, polar_breaks=(), r=1.0):
    """Normalized mean of ``phi`` over the sphere of radius ``r``.

    ``phi`` receives points of shape ``(N, 3)``.
    """
    pts, w = sphere_rule_3d(spec, axis, polar_breaks)
    vals = checked(np.real(phi(r * pts)))
    return float(np.sum(w * vals))


def ball_green_integral_3d(psi, spec=None):
    """``c_3 int_B psi(x) (1/|x| - 1) dV(x)`` with ``c_3 = 1/(4 pi)``.

    In polar form this is ``int_0^1 (r - r^2) mean_S psi(r .) dr``; the
    radial factor is polynomial, so Gauss-Legendre on (0, 1) is exact for
    polynomial ``psi``.
    """
    spec = _spec(spec)
    x, wx = np.polynomial.legendre.leggauss(spec.ball_radial)
    r = (x + 1.0) / 2.0
    wr = wx / 2.0 * (r - r * r)
    pts, ws = sphere_rule_3d(spec)
    allpts = (r[:, None, None] * pts[None, :, :]).reshape(-1, 3)
    vals = checked(np.real(psi(allpts))).reshape(r.size, -1)
    return float(np.sum(wr * (vals @ ws)))


# -- integral means ----------------------------------------------------------

def hardy_norm(evaluator, p, r=1.0, spec=None, dim=2, return_info=False, **sphere_kw):
    """Integral mean ``M_p = (mean |evaluator|^p)^{1/p}`` on the radius-r circle/sphere.

    For polynomial data the Hardy norm is ``M_p`` at ``r = 1``.  When
    ``|evaluator| < 1e-10`` at some node the integrand is only C^1 there;
    the value is still returned and ``info["degraded"]`` is set.
    """
    check_p(p)
    info = {"degraded": False}

    def integrand(x):
        vals = np.asarray(evaluator(x))
        # vector-valued maps on the sphere return (N, n)
        a = np.linalg.norm(vals, axis=-1) if dim == 3 and vals.ndim == 2 else np.abs(vals)
        if np.any(a < 1e-10):
            info["degraded"] = True
        return a**p

    if dim == 2:
        mean = circle_mean(integrand, r, spec)
    elif dim == 3:
        mean = sphere_mean_3d(integrand, spec, r=r, **sphere_kw)
    else:
        raise ValueError("quadrature paths exist for dim 2 and 3 only")
    value = mean ** (1.0 / p)
    if return_info:
        return value, info
    return value
