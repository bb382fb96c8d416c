"""End-to-end verification of the Riesz-type inequalities.

Every check returns a :class:`VerificationReport`.  A report passes when
``lhs <= rhs * (1 + 1e-9)`` and all of its hypothesis flags hold; when a
hypothesis of the inequality fails the report is ``NOT-APPLICABLE``, the
measured values are still recorded, and ``pass`` is ``None``.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import roots_jacobi

from .analytic_core import ComplexSeries, sector_boundary_value, sector_series
from .ball_harmonic import LinearBallMap, qr_constant_linear
from .constants import (c_theorem1, c_theorem2, check_p, d_theorem2,
                        initial_condition_ok, pichorides_AB, verbitsky_CD)
from .errors import DomainError
from .identities import (DEFAULT_SCHEDULE, _eps_monotone, green_identity_details,
                         green_representation_residual)
from .planar_harmonic import (PlanarHarmonicMap, initial_angle, k_to_K, make_qr_map,
                              polar_grid, qr_bound, range_avoids_negative_axis)
from .quadrature import DEFAULT_SPEC, hardy_norm, sphere_mean_3d
from .zero_adapted import mean_abs_power

REL_TOL = 1e-9
PASS, FAIL, NOT_APPLICABLE = "PASS", "FAIL", "NOT-APPLICABLE"


@dataclass
class VerificationReport:
    theorem_id: str
    params: dict
    lhs: float
    rhs: float
    constant: float
    hypotheses: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)
    notes: str = ""
    evidence: dict = field(default_factory=dict)
    ratio: float = None
    passed: bool = None
    status: str = None

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        self.constant = float(self.constant)
        self.hypotheses = {k: bool(v) for k, v in self.hypotheses.items()}
        self.params = _plain(self.params)
        self.grid = _plain(self.grid)
        self.evidence = _plain(self.evidence)
        if self.ratio is not None:
            self.ratio = float(self.ratio)
        if self.ratio is None and self.rhs > 0:
            self.ratio = self.lhs / self.rhs
        if self.status is None:
            if not all(self.hypotheses.values()):
                self.status, self.passed = NOT_APPLICABLE, None
            else:
                self.passed = bool(self.lhs <= self.rhs * (1.0 + REL_TOL))
                self.status = PASS if self.passed else FAIL

    def to_dict(self):
        return {
            "theorem_id": self.theorem_id,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "constant": self.constant,
            "ratio": self.ratio,
            "hypotheses": dict(self.hypotheses),
            "pass": self.passed,
            "status": self.status,
            "grid": dict(self.grid),
            "notes": self.notes,
            "evidence": dict(self.evidence),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            theorem_id=d["theorem_id"], params=dict(d["params"]), lhs=d["lhs"], rhs=d["rhs"],
            constant=d["constant"], hypotheses=dict(d["hypotheses"]), grid=dict(d["grid"]),
            notes=d.get("notes", ""), evidence=dict(d.get("evidence", {})), ratio=d["ratio"],
            passed=d["pass"], status=d["status"],
        )


def _plain(x):
    """Convert numpy scalars and containers to plain JSON-ready Python values."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        # JSON has no inf/nan; keep them readable as strings
        return float(x) if math.isfinite(x) else repr(float(x))
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def _grid(spec):
    spec = spec or DEFAULT_SPEC
    return {"angles": spec.n_angles, "radial": spec.n_radial}


# -- pointwise trigonometric inequalities --------------------------------------

class GridMinimum(NamedTuple):
    min_value: float
    argmin: float


def _scan(values, x):
    i = int(np.argmin(values))
    return GridMinimum(float(values[i]), float(x[i]))


def _check_grid(n_grid):
    if n_grid < 1000:
        raise DomainError(f"n_grid must be >= 1000, got {n_grid}")


def verify_pointwise_pichorides(p, n_grid=100_000):
    """Minimum over ``|x| <= pi`` of ``A|cos x|^p - B cos(px) - |sin x|^p``."""
    check_p(p)
    _check_grid(n_grid)
    A, B = pichorides_AB(p)
    x = np.linspace(-math.pi, math.pi, n_grid)
    gap = A * np.abs(np.cos(x)) ** p - B * np.cos(p * x) - np.abs(np.sin(x)) ** p
    return _scan(gap, x)


def pichorides_extension_gap(p, n_grid=100_000):
    """Minimum of ``cos(p(pi - x)) - cos(px)`` over ``x`` in ``[pi/2, pi]``.

    Nonnegativity lets the bound proved on ``|x| <= pi/2`` carry over to
    ``|x| <= pi``.
    """
    check_p(p)
    x = np.linspace(math.pi / 2, math.pi, n_grid)
    return _scan(np.cos(p * (math.pi - x)) - np.cos(p * x), x)


def verify_pointwise_verbitsky(p, n_grid=100_000):
    """Minimum over ``[-pi, pi]`` of ``-1 + C|cos t|^p - D cos(pt)``."""
    check_p(p)
    _check_grid(n_grid)
    C, D = verbitsky_CD(p)
    t = np.linspace(-math.pi, math.pi, n_grid)
    return _scan(-1.0 + C * np.abs(np.cos(t)) ** p - D * np.cos(p * t), t)


def pichorides_report(p, n_grid=100_000):
    g = verify_pointwise_pichorides(p, n_grid)
    ext = pichorides_extension_gap(p, n_grid)
    A, B = pichorides_AB(p)
    return VerificationReport(
        "pichorides", {"p": p, "n_grid": n_grid}, lhs=-g.min_value, rhs=0.0, constant=A,
        hypotheses={"extension_nonnegative": ext.min_value >= -1e-12},
        grid={"points": n_grid}, status=PASS if g.min_value >= -1e-12 and ext.min_value >= -1e-12 else FAIL,
        passed=bool(g.min_value >= -1e-12 and ext.min_value >= -1e-12),
        evidence={"min_gap": g.min_value, "argmin": g.argmin, "A": A, "B": B,
                  "extension_min": ext.min_value},
        notes="lhs is minus the minimal gap; passes when the gap is >= -1e-12",
    )


def verbitsky_report(p, n_grid=100_000):
    g = verify_pointwise_verbitsky(p, n_grid)
    C, D = verbitsky_CD(p)
    ok = g.min_value >= -1e-12
    return VerificationReport(
        "verbitsky", {"p": p, "n_grid": n_grid}, lhs=-g.min_value, rhs=0.0, constant=C,
        grid={"points": n_grid}, status=PASS if ok else FAIL, passed=bool(ok),
        evidence={"min_value": g.min_value, "argmin": g.argmin, "C": C, "D": D},
        notes="lhs is minus the minimal value; passes when the value is >= -1e-12",
    )


# -- plane estimate ----------------------------------------------------------------

def _norms_plane(m, p, spec):
    f_norm = hardy_norm(m, p, 1.0, spec)
    u_pp = mean_abs_power(m.u_series, p, 1.0, spec)
    return f_norm, u_pp


def check_theorem1_plane(m, p, spec=None):
    """``||f||_p <= c_2(K, p) ||Re f||_p`` for a harmonic map with ``Im f(0) = 0``.

    The two-term form ``||f||_p^p <= |f(0)|^p + c^p (||u||_p^p - |u(0)|^p)``
    is recorded in the evidence.
    """
    check_p(p)
    spec = spec or DEFAULT_SPEC
    k_sup, K = qr_bound(m)
    f0 = complex(m(0.0))
    f_norm, u_pp = _norms_plane(m, p, spec)
    c = c_theorem1(2, K, p)
    u_norm = u_pp ** (1.0 / p)
    two_lhs = f_norm**p
    two_rhs = abs(f0) ** p + c**p * (u_pp - abs(f0.real) ** p)
    return VerificationReport(
        "theorem1-plane", {"p": p, "K": K, "k": k_sup, "n": 2},
        lhs=f_norm, rhs=c * u_norm, constant=c,
        hypotheses={"im_f0_zero": abs(f0.imag) <= 1e-12, "quasiregular": math.isfinite(K)},
        grid=_grid(spec),
        evidence={"norm_u": u_norm, "two_term_lhs": two_lhs, "two_term_rhs": two_rhs,
                  "two_term_holds": bool(two_lhs <= two_rhs * (1.0 + REL_TOL))},
    )


# -- ball estimate -------------------------------------------------------------------

def _first_component_mean(a, b1, p):
    """``mean_S |a.x + b1|^p`` on S^2 in closed form.

    Under the normalized surface measure ``s = <x, a>/|a|`` is uniform on
    ``[-1, 1]``, so the mean is ``(1/2) int_{-1}^{1} |alpha s + b1|^p ds``.
    """
    alpha = float(np.linalg.norm(a))
    if alpha == 0.0:
        return abs(b1) ** p

    def prim(s):
        y = alpha * s + b1
        return math.copysign(abs(y) ** (p + 1.0), y) / (alpha * (p + 1.0))

    return (prim(1.0) - prim(-1.0)) / 2.0


def check_theorem1_ball(fmap, p, spec=None):
    """``||f||_p^p <= |f(0)|^p + c_n(K,p)^p (||f_1||_p^p - |f_1(0)|^p)`` for ``x -> Ax + b``.

    Quadrature on S^2 for ``n = 3``; for ``p = 2`` every ``n`` uses the
    closed forms ``mean|Ax+b|^2 = ||A||_F^2/n + |b|^2``.
    """
    check_p(p)
    spec = spec or DEFAULT_SPEC
    A, b, n = fmap.A, fmap.b, fmap.n
    K = qr_constant_linear(A)
    c = c_theorem1(n, K, p)
    evidence = {}
    if p == 2.0:
        lhs = float(np.sum(A * A)) / n + float(b @ b)
        f1 = float(A[0] @ A[0]) / n + b[0] ** 2
        path = "closed-form"
        if n == 3:
            evidence["lhs_quadrature"] = sphere_mean_3d(lambda x: np.sum(fmap(x) ** 2, axis=-1), spec)
    elif n == 3:
        lhs = sphere_mean_3d(lambda x: np.linalg.norm(fmap(x), axis=-1) ** p, spec)
        f1 = _first_component_mean(A[0], b[0], p)
        a0 = np.linalg.norm(A[0])
        breaks = (-b[0] / a0,) if a0 > 0 else ()
        evidence["f1_quadrature"] = sphere_mean_3d(
            lambda x: np.abs(x @ A[0] + b[0]) ** p, spec, axis=A[0] if a0 > 0 else None, polar_breaks=breaks)
        path = "quadrature"
    else:
        raise DomainError("the ball check needs n = 3, or p = 2 for the closed-form path")
    b_norm = float(np.linalg.norm(b))
    rhs = b_norm**p + c**p * (f1 - abs(b[0]) ** p)
    evidence.update({"norm_f1_pp": f1, "path": path})
    return VerificationReport(
        "theorem1-ball", {"p": p, "K": K, "n": n}, lhs=lhs, rhs=rhs, constant=c,
        hypotheses={"nonsingular": True}, grid={"polar": spec.sphere_polar, "azimuth": spec.sphere_azimuth},
        evidence=evidence, notes="lhs and rhs are p-th powers of norms",
    )


def equality_case_identity(n, spec=None):
    """Equality for the identity map at ``K = 1``, ``p = 2``: ``||I||_2 = sqrt(n) ||I_1||_2``."""
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    spec = spec or DEFAULT_SPEC
    c = c_theorem1(n, 1.0, 2.0)
    lhs = 1.0
    rhs = c * math.sqrt(1.0 / n)
    hyp = {"equality_1e-14": abs(lhs - rhs) <= 1e-14}
    evidence = {"norm_I_squared": 1.0, "norm_I1_squared": 1.0 / n}
    if n == 3:
        x1 = sphere_mean_3d(lambda x: x[:, 0] ** 2, spec)
        full = sphere_mean_3d(lambda x: np.sum(x * x, axis=-1), spec)
        evidence.update({"quadrature_x1_squared": x1, "quadrature_norm_squared": full})
        hyp["quadrature_1e-12"] = abs(x1 - 1.0 / 3.0) <= 1e-12 and abs(full - 1.0) <= 1e-12
    return VerificationReport(
        "equality-identity", {"p": 2.0, "K": 1.0, "n": n}, lhs=lhs, rhs=rhs, constant=c,
        hypotheses=hyp, grid={"polar": spec.sphere_polar, "azimuth": spec.sphere_azimuth},
        evidence=evidence, notes="closed-form identity-map equality case",
        status=PASS if all(hyp.values()) else FAIL, passed=bool(all(hyp.values())),
    )


# -- conjugate estimates ---------------------------------------------------------------------

def check_theorem2(m, p, spec=None):
    """Reports for ``||Im f||_p <= c(K,p)||Re f||_p`` and ``||f||_p <= d(K,p)||Re f||_p``.

    Hypotheses: ``|arg f(0)| < pi/2p`` (or ``f(0) = 0``), the range of ``f``
    avoids the closed negative axis on the grid, and ``K`` is finite.
    """
    check_p(p)
    spec = spec or DEFAULT_SPEC
    k_sup, K = qr_bound(m)
    theta = initial_angle(m)
    general, strict = initial_condition_ok(theta, p, k_sup)
    hyp = {
        "initial_angle": strict,
        "range_avoids_negative_axis": range_avoids_negative_axis(m),
        "quasiregular": math.isfinite(K),
    }
    f_norm = hardy_norm(m, p, 1.0, spec)
    u_norm = mean_abs_power(m.u_series, p, 1.0, spec) ** (1.0 / p)
    v_norm = mean_abs_power(m.v_series, p, 1.0, spec) ** (1.0 / p)
    c, d = c_theorem2(p, K), d_theorem2(p, K)
    params = {"p": p, "K": K, "k": k_sup}
    ev = {"theta": theta, "general_angle_condition": general, "norm_u": u_norm,
          "norm_v": v_norm, "norm_f": f_norm}
    a = VerificationReport("theorem2a", params, lhs=v_norm, rhs=c * u_norm, constant=c,
                           hypotheses=hyp, grid=_grid(spec), evidence=ev)
    b = VerificationReport("theorem2b", dict(params), lhs=f_norm, rhs=d * u_norm, constant=d,
                           hypotheses=dict(hyp), grid=_grid(spec), evidence=dict(ev))
    return a, b


# -- sector family ---------------------------------------------------------------

class SharpnessResult(NamedTuple):
    measured_ratio: float
    bound: float
    gap: float


def _sector_rule(s, order=10, levels=64, ratio=0.5):
    """Nodes/weights on ``(0, pi)`` for ``|cot(t/2)|^s * smooth``.

    Geometric panels towards both ends, Gauss-Jacobi innermost panels
    carrying ``t^{-s}`` at 0 and ``(pi - t)^s`` at pi.  Weights integrate
    ``(1/pi) int_0^pi``, the normalized mean of an even function.
    """
    xg, wg = np.polynomial.legendre.leggauss(order)
    half = math.pi / 2.0
    lo_edges = half * ratio ** np.arange(levels, -1, -1)
    hi_edges = math.pi - half * ratio ** np.arange(0, levels + 1)
    edges = np.concatenate([lo_edges, hi_edges[1:]])
    a, b = edges[:-1, None], edges[1:, None]
    t = (a + b) / 2 + (b - a) / 2 * xg
    w = (b - a) / 2 * wg
    # innermost panels with the endpoint behaviour folded into the weights
    d0 = lo_edges[0]
    xj, wj = roots_jacobi(order, 0.0, -s)
    t0 = d0 * (1 + xj) / 2
    w0 = (d0 / 2) * wj / (1 + xj) ** (-s)
    d1 = half * ratio**levels
    xj, wj = roots_jacobi(order, s, 0.0)
    t1 = math.pi - d1 + d1 * (1 + xj) / 2
    w1 = (d1 / 2) * wj / (1 - xj) ** s
    t = np.concatenate([t0, t.ravel(), t1])
    w = np.concatenate([w0, w.ravel(), w1]) / math.pi
    return t, w


def sector_family_map(beta, k, degree):
    """Truncated ``g_beta - k conj(g_beta)``; its dilatation is exactly ``k``."""
    g = sector_series(beta, degree)
    return PlanarHarmonicMap(g, g * (-k))


def _sharpness(p, k, beta_fraction, truncation_degree=32):
    check_p(p)
    if not 0.0 <= k <= 0.5:
        raise DomainError(f"k must lie in [0, 0.5], got {k!r}")
    if not 0.0 < beta_fraction < 1.0:
        raise DomainError(f"beta_fraction must lie in (0, 1), got {beta_fraction!r}")
    beta = beta_fraction * math.pi / (2.0 * p)
    if beta * p >= math.pi / 2.0:
        raise DomainError("beta * p >= pi/2: the map leaves h^p")
    s = 2.0 * beta * p / math.pi
    t, w = _sector_rule(s)
    gb = sector_boundary_value(beta, t)
    u = (1.0 - k) * gb.real
    v = (1.0 + k) * gb.imag
    u_pp = float(np.sum(w * np.abs(u) ** p))
    v_pp = float(np.sum(w * np.abs(v) ** p))
    measured = (v_pp / u_pp) ** (1.0 / p)
    K = k_to_K(k)
    bound = c_theorem2(p, K)
    exact_u = ((1.0 - k) * math.cos(beta)) ** p / math.cos(beta * p)
    # interior hypotheses from the truncated series on r <= 0.9
    m = sector_family_map(beta, k, truncation_degree)
    vals = m(polar_grid(32, 256, 0.9))
    range_ok = bool(np.all((vals.real > 0) | (np.abs(vals.imag) > 1e-9)))
    info = {
        "beta": beta, "K": K, "norm_u_pp": u_pp, "norm_v_pp": v_pp,
        "norm_u_pp_closed_form": exact_u, "norm_u_relerr": abs(u_pp - exact_u) / exact_u,
        "predicted_ratio": K * math.tan(beta), "range_interior_ok": range_ok,
    }
    return SharpnessResult(measured, bound, bound - measured), info


def sharpness_probe(p, k, beta_fraction, truncation_degree=32, spec=None):
    """Ratio ``||v||_p / ||u||_p`` for the sector family against ``c(K, p)``."""
    return _sharpness(p, k, beta_fraction, truncation_degree)[0]


def sharpness_report(p, k, beta_fraction, truncation_degree=32, spec=None):
    res, info = _sharpness(p, k, beta_fraction, truncation_degree)
    return VerificationReport(
        "sharpness", {"p": p, "k": k, "K": info["K"], "beta_fraction": beta_fraction,
                      "degree": truncation_degree},
        lhs=res.measured_ratio, rhs=res.bound, constant=res.bound,
        hypotheses={"range_avoids_negative_axis": info["range_interior_ok"], "initial_angle": True},
        grid={"levels": 64, "order": 10}, evidence={**info, "gap": res.gap},
        notes="boundary integrals use the closed-form sector values",
    )


# -- random families -------------------------------------------------------------

def _unit_disk_point(rng):
    r = math.sqrt(rng.uniform())
    a = rng.uniform(0.0, 2.0 * math.pi)
    return r * complex(math.cos(a), math.sin(a))


def random_qr_family(seed, count, degree=8, k_max=0.3, positive=False):
    """Deterministic pseudo-random harmonic maps with dilatation at most ``k_max``.

    ``g`` has coefficients uniform in the square ``[-1,1]^2`` scaled by
    ``1/(j+1)^2`` with a real constant term, so ``Im f(0) = 0``.  With
    ``positive`` the constant term is raised by 1.1 times the grid maximum
    of ``|g|``, pushing ``Re f`` above zero.  ``h' = omega g'`` where
    ``omega`` is ``k_max`` times a constant or affine function with
    ``sup |omega| <= 1``.
    """
    if degree > 16:
        raise DomainError("degree must be <= 16")
    if not 0.0 <= k_max < 1.0:
        raise DomainError("k_max must lie in [0, 1)")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        j = np.arange(degree + 1)
        c = (rng.uniform(-1, 1, degree + 1) + 1j * rng.uniform(-1, 1, degree + 1)) / (j + 1.0) ** 2
        c[0] = c[0].real
        if positive:
            c[0] += 1.1 * float(np.max(np.abs(ComplexSeries(c)(polar_grid(16, 256)))))
        z0, z1 = _unit_disk_point(rng), _unit_disk_point(rng)
        if rng.uniform() < 0.5:
            omega = ComplexSeries([k_max * z0])
        else:
            s = rng.uniform()
            omega = ComplexSeries([k_max * s * z0, k_max * (1.0 - s) * z1])
        out.append(make_qr_map(ComplexSeries(c), omega))
    return out


# -- Green identity reports ------------------------------------------------------

def green_identity_report(m, p, spec=None):
    spec = spec or DEFAULT_SPEC
    d = green_identity_details(m, p, spec, DEFAULT_SCHEDULE)
    mono = _eps_monotone(m, p, d, spec, DEFAULT_SCHEDULE)
    ok = d.residual <= 1e-6 and mono
    return VerificationReport(
        "green-identity", {"p": p}, lhs=d.lhs, rhs=d.rhs, constant=1.0,
        hypotheses={"residual_1e-6": d.residual <= 1e-6, "eps_monotone": mono},
        grid={**_grid(spec), "nodes": d.n_nodes}, status=PASS if ok else FAIL, passed=bool(ok),
        ratio=d.lhs / d.rhs if d.rhs > 0 else None,
        evidence={"residual": d.residual, "u0": d.u0, "eps_gap": d.eps_gap,
                  "regularized_smallest_eps": d.regularized[-1], "flagged_nodes": d.flagged_nodes,
                  "tangencies": d.tangencies},
        notes="identity check: lhs and rhs should agree",
    )


def _manufactured_cases():
    """``(name, n, w, Delta w, harmonic)`` polynomial test solutions."""
    return [
        ("re z", 2, lambda z: np.real(z), lambda z: 0.0 * np.real(z), True),
        ("re z^3 + im z^2", 2, lambda z: np.real(z**3) + np.imag(z**2), lambda z: 0.0 * np.real(z), True),
        ("|z|^2", 2, lambda z: np.abs(z) ** 2, lambda z: 4.0 + 0.0 * np.real(z), False),
        ("|z|^4 + re z^3", 2, lambda z: np.abs(z) ** 4 + np.real(z**3), lambda z: 16.0 * np.abs(z) ** 2, False),
        ("x1", 3, lambda y: y[..., 0], lambda y: 0.0 * y[..., 0], True),
        ("x1 x2 x3", 3, lambda y: y[..., 0] * y[..., 1] * y[..., 2], lambda y: 0.0 * y[..., 0], True),
        ("|x|^2", 3, lambda y: np.sum(y * y, axis=-1), lambda y: 6.0 + 0.0 * y[..., 0], False),
        ("x1^2 x2 + x3^4", 3, lambda y: y[..., 0] ** 2 * y[..., 1] + y[..., 2] ** 4,
         lambda y: 2.0 * y[..., 1] + 12.0 * y[..., 2] ** 2, False),
    ]


def representation_points(n, count=10, seed=0):
    """Deterministic interior points with ``|x| <= 0.8``."""
    rng = np.random.default_rng(seed)
    pts = []
    for i in range(count):
        v = rng.normal(size=n)
        v *= 0.8 * (i / max(count - 1, 1)) / np.linalg.norm(v)
        pts.append(complex(v[0], v[1]) if n == 2 else v)
    return pts


def green_representation_reports(spec=None, count=10):
    spec = spec or DEFAULT_SPEC
    out = []
    for name, n, w, lap, harmonic in _manufactured_cases():
        tol = 1e-8 if harmonic else 1e-6
        res = [green_representation_residual(w, lap, x, spec) for x in representation_points(n, count)]
        worst = max(res)
        out.append(VerificationReport(
            "green-representation", {"n": n, "solution": name}, lhs=worst, rhs=tol, constant=tol,
            grid=_grid(spec), evidence={"residuals": res, "harmonic": harmonic},
            notes="lhs is the worst residual over the sample points",
        ))
    return out


# -- suite -------------------------------------------------------------------------

def _workers():
    try:
        n = int(os.environ.get("QRLAB_THREADS", "0"))
    except ValueError:
        n = 0
    if n <= 0:
        n = min(8, os.cpu_count() or 1)
    return n


def parallel_map(fn, items):
    """Order-preserving map over a thread pool capped by ``QRLAB_THREADS``."""
    items = list(items)
    n = _workers()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def run_suite(seed=7, samples=200, spec=None):
    """Every acceptance check as a list of reports, in a fixed order."""
    spec = spec or DEFAULT_SPEC
    reports = []
    for p in (1.1, 1.25, 1.5, 1.75, 2.0):
        reports.append(pichorides_report(p))
        reports.append(verbitsky_report(p))

    green_maps = random_qr_family(seed, 20, degree=6, k_max=0.3)
    jobs = [(m, p) for m in green_maps for p in (1.2, 1.5, 2.0)]
    reports.extend(parallel_map(lambda mp: green_identity_report(mp[0], mp[1], spec), jobs))
    reports.extend(green_representation_reports(spec))

    for i, p in enumerate((1.25, 1.5, 2.0)):
        for j, k in enumerate((0.0, 0.1, 0.3)):
            fam = random_qr_family(seed * 1000 + 10 * i + j, samples, degree=8, k_max=k)
            reports.extend(parallel_map(lambda m, p=p: check_theorem1_plane(m, p, spec), fam))

    for s in (1.0, 1.5, 2.0, 4.0):
        for p in (1.5, 2.0):
            reports.append(check_theorem1_ball(LinearBallMap(np.diag([1.0, 1.0, s]), None), p, spec))
    for n in (2, 3, 7):
        reports.append(equality_case_identity(n, spec))

    for p in (1.25, 1.5, 2.0):
        fam = random_qr_family(seed * 2000 + int(p * 100), max(1, samples // 10), degree=6,
                               k_max=0.1, positive=True)
        for a, b in parallel_map(lambda m, p=p: check_theorem2(m, p, spec), fam):
            reports.extend([a, b])
        for k in (0.0, 0.05, 0.1):
            for bf in (0.5, 0.9, 0.99):
                reports.append(sharpness_report(p, k, bf))
        reports.append(sharpness_report(p, 0.0, 0.999))
    return reports


def summarize(reports):
    counts = {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0}
    for r in reports:
        counts[r.status] += 1
    return counts
