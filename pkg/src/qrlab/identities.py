"""Laplacians of |f|^p, |u|^p and Re f^p, finite-difference oracles and Green identities.

For a planar harmonic map ``f = g + conj(h)``:

* ``Delta |f|^p = p(p-2)/4 |f|^{p-4} |grad |f|^2|^2 + 2p |f|^{p-2} (|g'|^2 + |h'|^2)``
  with ``|grad |f|^2|^2 = 4 |g' conj(f) + f h'|^2``;
* ``Delta |u|^p = p(p-1) |g' + h'|^2 |u|^{p-2}`` for ``u = Re f``;
* ``Delta Re f^p = p(p-1) Re(f^{p-2} 4 g' conj(h'))`` (principal branch).

The Green identity on the disk reads
``mean |u|^p = |u(0)|^p + (1/2pi) int p(p-1)|u|^{p-2}|grad u|^2 log(1/|z|) dA``.
The integrand is singular on the zero set of ``u`` when ``p < 2``; it is
integrated with :class:`qrlab.zero_adapted.ZeroAdaptedDiskRule`.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .analytic_core import ComplexSeries
from .ball_harmonic import poisson_kernel
from .constants import check_p
from .errors import BranchError, DomainError, NearZeroError
from .planar_harmonic import PlanarHarmonicMap
from .quadrature import (DEFAULT_SPEC, _panel_gauss, checked, circle_mean,
                         disk_green_integral, sphere_rule_3d)
from .zero_adapted import ZeroAdaptedDiskRule, circle_rule, mean_abs_power

NEAR_ZERO = 1e-10


def _check_nonzero(values, what):
    a = np.abs(values)
    if np.any(a < NEAR_ZERO):
        raise NearZeroError(f"|{what}| < {NEAR_ZERO} at an evaluation point")


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


# -- closed-form Laplacians ---------------------------------------------------

def laplacian_abs_f_p(m, z, p):
    """``Delta |f|^p`` at ``z`` (requires ``|f(z)| > 1e-10``)."""
    f = m(z)
    _check_nonzero(f, "f")
    gp = m.g.derivative()(z)
    hp = m.h.derivative()(z)
    a = np.abs(f)
    grad2 = 4.0 * np.abs(gp * np.conj(f) + f * hp) ** 2
    out = (p * (p - 2.0) / 4.0 * a ** (p - 4.0) * grad2
           + 2.0 * p * a ** (p - 2.0) * (np.abs(gp) ** 2 + np.abs(hp) ** 2))
    return _scalar(out)


def laplacian_abs_u_p(m, z, p):
    """``Delta |u|^p = p(p-1)|g'+h'|^2 |u|^{p-2}`` (requires ``|u(z)| > 1e-10``)."""
    u = np.real(m(z))
    _check_nonzero(u, "u")
    grad2 = np.abs(m.g.derivative()(z) + m.h.derivative()(z)) ** 2
    return _scalar(p * (p - 1.0) * grad2 * np.abs(u) ** (p - 2.0))


def _check_branch(f):
    _check_nonzero(f, "f")
    on_cut = (np.real(f) <= 0) & (np.abs(np.imag(f)) <= 1e-14 * np.abs(f))
    if np.any(on_cut):
        raise BranchError("f lies on the closed negative real axis; the principal power is discontinuous there")


def laplacian_re_f_p(m, z, p):
    """``Delta Re f^p = p(p-1) Re(f^{p-2} 4 g' conj(h'))`` with principal powers."""
    f = m(z)
    _check_branch(f)
    gp = m.g.derivative()(z)
    hp = m.h.derivative()(z)
    power = np.exp((p - 2.0) * np.log(np.asarray(f, dtype=complex)))
    return _scalar(p * (p - 1.0) * np.real(power * 4.0 * gp * np.conj(hp)))


def finite_diff_laplacian(phi, x, step=1e-4):
    """Second-order central stencil: 5 points in the plane, 7 in R^3.

    ``x`` is a complex number (plane) or a length-3 real vector (ball).
    Raises :class:`DomainError` when a stencil point leaves the unit ball.
    """
    if np.iscomplexobj(x) or np.ndim(x) == 0:
        x = complex(x)
        if abs(x) + step >= 1.0:
            raise DomainError("stencil leaves the unit disk")
        c = phi(x)
        s = phi(x + step) + phi(x - step) + phi(x + 1j * step) + phi(x - 1j * step)
        return float(np.real(s - 4.0 * c)) / step**2
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise ValueError("expected a complex point or a 3-vector")
    if np.linalg.norm(x) + step >= 1.0:
        raise DomainError("stencil leaves the unit ball")
    c = phi(x)
    s = sum(phi(x + sgn * step * e) for e in np.eye(3) for sgn in (1.0, -1.0))
    return float(np.real(s - 6.0 * c)) / step**2


# -- Green identity on the disk -----------------------------------------------

@dataclass(frozen=True)
class RegularizationSchedule:
    """Decreasing positive values of ``eps`` for ``w_eps = sqrt(eps^2 + u^2)``."""

    eps_values: tuple = field(default_factory=lambda: tuple(2.0 ** -j for j in range(21)))

    def __post_init__(self):
        vals = tuple(float(e) for e in self.eps_values)
        if not vals:
            raise ValueError("schedule must not be empty")
        if any(e <= 0.0 for e in vals):
            raise ValueError("eps values must be positive")
        if any(b >= a for a, b in zip(vals, vals[1:])):
            raise ValueError("eps values must be strictly decreasing")
        object.__setattr__(self, "eps_values", vals)

    @property
    def smallest(self):
        return self.eps_values[-1]


DEFAULT_SCHEDULE = RegularizationSchedule()


def _u_series(m):
    if isinstance(m, PlanarHarmonicMap):
        return m.u_series
    if isinstance(m, ComplexSeries):
        return m
    raise TypeError("expected a PlanarHarmonicMap or a ComplexSeries")


class GreenIdentity(NamedTuple):
    lhs: float
    rhs: float
    residual: float


@dataclass
class GreenIdentityDetails:
    """Everything computed along the way by :func:`green_identity_details`."""

    lhs: float
    rhs: float
    residual: float
    u0: float
    eps_values: tuple
    regularized: tuple
    eps_gap: float
    flagged_nodes: int
    n_nodes: int
    tangencies: int

    @property
    def identity(self):
        return GreenIdentity(self.lhs, self.rhs, self.residual)


def _integrands(F, p, rule):
    Fp = F.derivative()
    z, w_sing = rule.nodes(p - 2.0)
    _, w_reg = rule.nodes(0.0)
    u = np.real(F(z))
    grad2 = np.abs(Fp(z)) ** 2
    return z, u, grad2, w_sing, w_reg


def green_identity_details(m, p, spec=None, schedule=None):
    """Both sides of the Green identity for ``u = Re f`` plus the eps-path.

    ``lhs = mean |u|^p`` on the unit circle.  ``rhs`` uses the exact limit
    integrand ``p(p-1)|u|^{p-2}|grad u|^2``; nodes where ``|u|`` sits at the
    rounding floor are counted in ``flagged_nodes`` and evaluated with
    ``|u|`` replaced by that floor.  ``regularized`` holds the potentials of
    ``p(p-1)(eps^2+u^2)^{(p-2)/2}|grad u|^2`` along the schedule, all
    integrated with one rule that resolves the smallest ``eps``.
    """
    check_p(p)
    spec = spec or DEFAULT_SPEC
    schedule = schedule or DEFAULT_SCHEDULE
    F = _u_series(m)
    rule = ZeroAdaptedDiskRule(F, spec, eps=schedule.smallest)
    z, u, grad2, w_sing, w_reg = _integrands(F, p, rule)
    floor = 4.0 * np.finfo(float).eps * float(np.sum(np.abs(F.coeffs)))
    au = np.abs(u)
    flagged = int(np.count_nonzero(au < NEAR_ZERO))
    au_safe = np.maximum(au, floor)
    pot = float(np.sum(w_sing * checked(p * (p - 1.0) * au_safe ** (p - 2.0) * grad2)))
    regs = tuple(
        float(np.sum(w_reg * checked(p * (p - 1.0) * (e * e + u * u) ** ((p - 2.0) / 2.0) * grad2)))
        for e in schedule.eps_values
    )
    u0 = float(np.real(F(0.0)))
    lhs = mean_abs_power(F, p, 1.0, spec)
    rhs = abs(u0) ** p + pot
    return GreenIdentityDetails(
        lhs=lhs, rhs=rhs, residual=abs(lhs - rhs) / (1.0 + abs(lhs)), u0=u0,
        eps_values=schedule.eps_values, regularized=regs, eps_gap=pot - regs[-1],
        flagged_nodes=flagged, n_nodes=int(z.size), tangencies=int(rule.tangencies.size),
    )


def green_identity_residual_plane(m, p, spec=None, schedule=None):
    """``(lhs, rhs, residual)`` of the disk Green identity for ``u = Re f``."""
    return green_identity_details(m, p, spec, schedule).identity


def eps_monotonicity_check(m, p, spec=None, schedule=None, n_check=2048):
    """Monotone structure of the eps-regularization along ``schedule``.

    True iff all of the following hold:

    * ``w_eps = sqrt(eps^2 + u^2)`` decreases pointwise as ``eps`` decreases
      (checked on ``n_check`` quadrature nodes);
    * the regularized potentials of ``p(p-1) w_eps^{p-2} |grad u|^2`` are
      nondecreasing as ``eps`` decreases and never exceed the limit value;
    * the boundary means of ``w_eps^p`` are nonincreasing as ``eps``
      decreases and stay above ``mean |u|^p``.
    """
    check_p(p)
    spec = spec or DEFAULT_SPEC
    schedule = schedule or DEFAULT_SCHEDULE
    return _eps_monotone(m, p, green_identity_details(m, p, spec, schedule), spec, schedule, n_check)


def _eps_monotone(m, p, d, spec, schedule, n_check=2048):
    F = _u_series(m)
    tol = 1e-12 * (1.0 + abs(d.rhs))
    regs = np.array(d.regularized)
    pot = d.rhs - abs(d.u0) ** p
    ok_pot = bool(np.all(np.diff(regs) >= -tol) and np.all(regs <= pot + tol))

    rng_nodes = np.linspace(0.0, 0.99, int(math.isqrt(n_check)) + 1)
    zz = np.multiply.outer(rng_nodes, np.exp(2j * math.pi * np.arange(int(math.isqrt(n_check))) / math.isqrt(n_check)))
    uu = np.real(F(zz.ravel()))
    ws = np.array([np.sqrt(e * e + uu * uu) for e in schedule.eps_values])
    ok_point = bool(np.all(np.diff(ws, axis=0) <= 0.0))

    t, w = circle_rule(F, 1.0, 0.0, spec, eps=schedule.smallest)
    ub = np.real(F(np.exp(1j * t)))
    means = np.array([float(np.sum(w * (e * e + ub * ub) ** (p / 2.0))) for e in schedule.eps_values])
    ok_mean = bool(np.all(np.diff(means) <= tol) and np.all(means >= d.lhs - tol))
    return ok_pot and ok_point and ok_mean


# -- Green representation ---------------------------------------------------

def _dim_of(x):
    if np.iscomplexobj(x) or np.ndim(x) == 0:
        return 2, complex(x)
    x = np.asarray(x, dtype=float)
    if x.shape == (2,):
        return 2, complex(x[0], x[1])
    if x.shape == (3,):
        return 3, x
    raise ValueError("expected a complex point, a 2-vector or a 3-vector")


def _green_potential_2d(forcing, x, spec):
    """``int_D G(x, y) forcing(y) dA(y)`` via the disk automorphism centred at ``x``."""
    def psi(zeta):
        y = (x + zeta) / (1.0 + np.conj(x) * zeta)
        jac = (1.0 - abs(x) ** 2) ** 2 / np.abs(1.0 + np.conj(x) * zeta) ** 4
        return forcing(y) * jac
    return disk_green_integral(psi, spec)


def _green_potential_3d(forcing, x, spec):
    """``int_B G(x, y) forcing(y) dV(y)`` with ``G = (1/4pi)(1/|x-y| - 1/[x,y])``."""
    axis = x if np.linalg.norm(x) > 0 else None
    pts, w = sphere_rule_3d(spec, axis=axis)
    # singular part in polar coordinates about x: int_S int_0^rho_max forcing rho drho
    xw = pts @ x
    rho_max = -xw + np.sqrt(xw * xw + 1.0 - x @ x)
    xg, wg = np.polynomial.legendre.leggauss(spec.ball_radial)
    s = (xg + 1.0) / 2.0
    rho = rho_max[:, None] * s[None, :]
    y = x[None, None, :] + rho[:, :, None] * pts[:, None, :]
    vals = checked(np.real(forcing(y.reshape(-1, 3)))).reshape(rho.shape)
    inner = np.sum(vals * rho * (wg / 2.0)[None, :], axis=1) * rho_max
    singular = float(np.sum(w * inner))
    # regular part: (1/4pi) int_B forcing(y) / [x, y] dV = int_0^1 r^2 mean_S(...) dr
    r, wr = _panel_gauss([0.0, 1.0], spec.ball_radial)
    y = r[:, None, None] * pts[None, :, :]
    yy = r[:, None] ** 2
    bracket = np.sqrt(1.0 + (x @ x) * yy - 2.0 * (y @ x))
    vals = checked(np.real(forcing(y.reshape(-1, 3)))).reshape(bracket.shape) / bracket
    regular = float(np.sum(wr * r * r * (vals @ w)))
    return singular - regular


def _poisson_2d(boundary_data, x, spec):
    return circle_mean(lambda eta: poisson_kernel(np.full(eta.shape, x), eta, 2) * boundary_data(eta), 1.0, spec)


def _poisson_3d(boundary_data, x, spec):
    axis = x if np.linalg.norm(x) > 0 else None
    pts, w = sphere_rule_3d(spec, axis=axis)
    vals = checked(np.real(poisson_kernel(x[None, :], pts, 3) * boundary_data(pts)))
    return float(np.sum(w * vals))


def green_representation(boundary_data, forcing, x, spec=None):
    """``P[boundary_data](x) - int G(x, y) forcing(y) dy`` on the unit disk or ball.

    In the plane points are complex; in R^3 callables receive arrays of
    shape ``(N, 3)``.  Solves ``Delta w = forcing``, ``w = boundary_data`` on
    the boundary.
    """
    spec = spec or DEFAULT_SPEC
    n, x = _dim_of(x)
    if n == 2:
        if abs(x) > 0.8:
            raise DomainError("representation is evaluated for |x| <= 0.8 only")
        return _poisson_2d(boundary_data, x, spec) - _green_potential_2d(forcing, x, spec)
    if np.linalg.norm(x) > 0.8:
        raise DomainError("representation is evaluated for |x| <= 0.8 only")
    return _poisson_3d(boundary_data, x, spec) - _green_potential_3d(forcing, x, spec)


def green_representation_residual(boundary_data, forcing, x, spec=None, solution=None):
    """``|w(x) - reconstruction|`` for a manufactured solution ``w``.

    ``solution`` defaults to ``boundary_data``, which suits polynomial ``w``
    defined on the whole closed ball.
    """
    solution = boundary_data if solution is None else solution
    n, xx = _dim_of(x)
    exact = solution(np.array([xx]) if n == 3 else xx)
    exact = float(np.real(np.ravel(exact)[0]))
    return abs(exact - green_representation(boundary_data, forcing, x, spec))
