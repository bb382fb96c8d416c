"""Quadrature adapted to the zero set of a harmonic function ``u = Re F``.

Integrands such as ``|u|**(p-2) |grad u|**2`` (p < 2) are singular along
the curve ``u = 0`` and ``|u|**p`` is only C^1 there.  Uniform grids converge
slowly on both, so these rules split every circle at the zeros and critical
points of ``t -> u(r e^{it})``, grade panels geometrically towards them, and
use one-sided Gauss-Jacobi panels next to simple zeros.  In the radial
direction the disk rule breaks at the origin and at every radius where a
circle is tangent to the zero set (found by Newton's method on
``u = d_t u = 0``), grading towards those radii as well.

``u`` on the circle of radius r is the real trigonometric polynomial
``Re sum_j c_j e^{ijt}`` with ``c_j = a_j r^j``.
"""

import math
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .quadrature import DEFAULT_SPEC

TWO_PI = 2.0 * math.pi


@lru_cache(maxsize=None)
def _gauss_legendre(n):
    return np.polynomial.legendre.leggauss(n)


@lru_cache(maxsize=None)
def _gauss_jacobi(n, a, b):
    x, w = roots_jacobi(n, a, b)
    return x, w


# -- circles -----------------------------------------------------------------
#
# A batch of circles is a coefficient matrix C of shape (m, d+1); row i holds
# c_j = a_j r_i^j.  Points on the circles are flat arrays with a parallel
# array of row indices.

def _trig_eval(C, rows, t, order=0):
    """``d^order/dt^order Re sum_j C[rows, j] e^{ijt}``."""
    j = np.arange(C.shape[1])
    coef = C[rows] * (1j * j) ** order if order else C[rows]
    return np.real(np.sum(coef * np.exp(1j * np.multiply.outer(t, j)), axis=-1))


def _group_bounds(rows, m):
    """Start offsets of each row's run in a row-sorted index array."""
    return np.searchsorted(rows, np.arange(m + 1))


def _sorted_unique(rows, t, m, tol):
    """Sort points by (row, angle in [0, 2pi)) and drop near-duplicates."""
    t = np.mod(t, TWO_PI)
    order = np.lexsort((t, rows))
    rows, t = rows[order], t[order]
    keep = np.ones(t.size, dtype=bool)
    keep[1:] = (rows[1:] != rows[:-1]) | (np.diff(t) > tol)
    rows, t = rows[keep], t[keep]
    if t.size == 0:
        return rows, t
    b = _group_bounds(rows, m)
    first, last = b[:-1], b[1:] - 1
    many = last > first
    first, last = first[many], last[many]
    wrap = t[first] + TWO_PI - t[last] <= tol
    if np.any(wrap):
        keep = np.ones(t.size, dtype=bool)
        keep[last[wrap]] = False
        rows, t = rows[keep], t[keep]
    return rows, t


def circle_critical_points(C):
    """Critical angles of ``u`` on each circle: ``(rows, t)`` sorted by row then angle.

    They are the unimodular roots of the degree-2d polynomial
    ``sum_j ij (c_j z^{d+j} - conj(c_j) z^{d-j})``, polished by Newton's method.
    """
    C = np.atleast_2d(np.asarray(C, dtype=complex))
    m, d1 = C.shape
    mag = np.abs(C)
    nz = mag > 1e-300 * np.max(mag, axis=1, keepdims=True).clip(1e-300)
    deg = np.where(nz.any(axis=1), d1 - 1 - np.argmax(nz[:, ::-1], axis=1), 0)
    rows_l, t_l = [], []
    for D in np.unique(deg):
        if D == 0:
            continue
        idx = np.flatnonzero(deg == D)
        c = C[idx, : D + 1]
        j = np.arange(1, D + 1)
        asc = np.zeros((idx.size, 2 * D + 1), dtype=complex)
        asc[:, D + j] = 1j * j * c[:, 1:]
        asc[:, D - j] = -1j * j * np.conj(c[:, 1:])
        # companion matrices of the monic polynomials
        monic = asc[:, :-1] / asc[:, -1:]
        comp = np.zeros((idx.size, 2 * D, 2 * D), dtype=complex)
        comp[:, 1:, :-1] = np.eye(2 * D - 1)
        comp[:, :, -1] = -monic
        roots = np.linalg.eigvals(comp)
        near = np.abs(np.abs(roots) - 1.0) < 0.05
        rr, cc = np.nonzero(near)
        rows_l.append(idx[rr])
        t_l.append(np.angle(roots[rr, cc]))
    if not rows_l:
        return np.empty(0, dtype=int), np.empty(0)
    rows = np.concatenate(rows_l)
    t = np.concatenate(t_l)
    for _ in range(8):
        d1v = _trig_eval(C, rows, t, 1)
        d2v = _trig_eval(C, rows, t, 2)
        safe = np.where(d2v == 0, 1.0, d2v)
        t = t - np.clip(np.where(d2v == 0, 0.0, d1v / safe), -0.05, 0.05)
    jj = np.arange(d1)
    tol = 1e-9 * np.sum(jj * np.abs(C), axis=1)
    ok = np.abs(_trig_eval(C, rows, t, 1)) <= tol[rows]
    return _sorted_unique(rows[ok], t[ok], m, 1e-12)


def circle_zeros(C, crit_rows, crit_t):
    """Zeros of ``u``, bracketed between consecutive critical points of each circle."""
    C = np.atleast_2d(np.asarray(C, dtype=complex))
    m = C.shape[0]
    if crit_t.size == 0:
        return np.empty(0, dtype=int), np.empty(0)
    b = _group_bounds(crit_rows, m)
    nxt = np.arange(crit_t.size) + 1
    ends = b[1:][crit_rows]
    wrap = nxt == ends
    nxt[wrap] = b[:-1][crit_rows[wrap]]
    uc = _trig_eval(C, crit_rows, crit_t)
    exact = uc == 0.0
    lo = crit_t
    hi = np.where(wrap, crit_t[nxt] + TWO_PI, crit_t[nxt])
    sel = (uc * uc[nxt] < 0) & (nxt != np.arange(crit_t.size))
    rows, lo, hi, ulo = crit_rows[sel], lo[sel], hi[sel], uc[sel]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        um = _trig_eval(C, rows, mid)
        same = np.sign(um) == np.sign(ulo)
        lo = np.where(same, mid, lo)
        ulo = np.where(same, um, ulo)
        hi = np.where(same, hi, mid)
    rows = np.concatenate([rows, crit_rows[exact]])
    t = np.concatenate([0.5 * (lo + hi), crit_t[exact]])
    return _sorted_unique(rows, t, m, 1e-13)


def _levels(target, half, ratio, cap):
    with np.errstate(divide="ignore"):
        j = np.ceil(np.log(np.minimum(target / half, 1.0)) / math.log(ratio))
    return np.clip(np.nan_to_num(j, nan=0.0), 0, cap).astype(int)


def circle_panels(C, spec=None, eps=None):
    """Panels ``(lo, hi, kind, row)`` covering one period of every circle.

    ``kind`` is 0 for a plain panel, 1 when ``lo`` is a zero of ``u`` and 2
    when ``hi`` is.  Panels are graded geometrically towards every zero and
    critical point, deep enough to resolve the neighbouring intervals.
    ``eps`` also resolves features of width ``eps / |u'|`` around zeros (as
    needed by ``sqrt(eps^2 + u^2)``).
    """
    spec = spec or DEFAULT_SPEC
    C = np.atleast_2d(np.asarray(C, dtype=complex))
    m = C.shape[0]
    ratio = spec.panel_ratio
    cap = 3 * spec.panel_levels
    max_len = 0.4
    crows, ct = circle_critical_points(C)
    zrows, zt = circle_zeros(C, crows, ct)
    rows = np.concatenate([crows, zrows])
    pts = np.concatenate([ct, zt])
    is_zero = np.concatenate([np.zeros(ct.size, bool), np.ones(zt.size, bool)])
    order = np.lexsort((pts, rows))
    rows, pts, is_zero = rows[order], pts[order], is_zero[order]
    keep = np.ones(pts.size, dtype=bool)
    keep[1:] = (rows[1:] != rows[:-1]) | (np.diff(pts) > 1e-13)
    rows, pts, is_zero = rows[keep], pts[keep], is_zero[keep]
    b = _group_bounds(rows, m)
    idx = np.arange(pts.size)
    nxt = idx + 1
    wrap = nxt == b[1:][rows]
    nxt[wrap] = b[:-1][rows[wrap]]
    prv = idx - 1
    first = idx == b[:-1][rows]
    prv[first] = b[1:][rows[first]] - 1
    ends = np.where(wrap, pts[nxt] + TWO_PI, pts[nxt])
    ell = ends - pts
    half = 0.5 * ell
    za, zb = is_zero, is_zero[nxt]
    jl = _levels(np.minimum(ell[prv], ell), half, ratio, cap) + 1
    jr = _levels(np.minimum(ell[nxt], ell), half, ratio, cap) + 1
    # a near-miss of the zero set leaves a sharp minimum of |u| at a critical
    # point, of width sqrt(|u| / |u''|)
    floor = 0.0 if eps is None else eps
    curv = np.abs(_trig_eval(C, rows, pts, 2))
    width = 0.1 * np.sqrt((np.abs(_trig_eval(C, rows, pts)) + floor) / np.maximum(curv, 1e-300))
    if eps is not None:
        slope = np.abs(_trig_eval(C, rows, pts, 1))
        width = np.where(is_zero, 0.1 * eps / np.maximum(slope, 1e-300), width)
        grade = np.ones(pts.size, dtype=bool)
    else:
        grade = ~is_zero
    jl = np.where(grade, np.maximum(jl, _levels(width, half, ratio, cap) + 1), jl)
    jr = np.where(grade[nxt], np.maximum(jr, _levels(width[nxt], half, ratio, cap) + 1), jr)

    count = jl + jr + 2
    rep = np.repeat(idx, count)
    q = np.arange(rep.size) - np.repeat(np.cumsum(count) - count, count)
    a, e, h = pts[rep], ends[rep], half[rep]
    L, R = jl[rep], jr[rep]
    left = q <= L
    qr = q - (L + 1)
    lo = np.where(left, np.where(q == 0, a, a + h * ratio ** (L - q + 1.0)), e - h * ratio ** qr.astype(float))
    hi = np.where(left, a + h * ratio ** (L - q + 0.0), np.where(qr == R, e, e - h * ratio ** (qr + 1.0)))
    kind = np.where((q == 0) & za[rep], 1, 0)
    kind = np.where((q == count[rep] - 1) & zb[rep], 2, kind)
    prow = rows[rep]

    # circles without critical points (u constant on the circle)
    bare = np.setdiff1d(np.arange(m), rows)
    if bare.size:
        edges = np.linspace(0.0, TWO_PI, 17)
        lo = np.concatenate([lo, np.tile(edges[:-1], bare.size)])
        hi = np.concatenate([hi, np.tile(edges[1:], bare.size)])
        kind = np.concatenate([kind, np.zeros(16 * bare.size, dtype=int)])
        prow = np.concatenate([prow, np.repeat(bare, 16)])

    # split long panels (only plain ones can be long)
    pieces = np.maximum(1, np.ceil((hi - lo) / max_len)).astype(int)
    if np.any(pieces > 1):
        rep = np.repeat(np.arange(lo.size), pieces)
        s = np.arange(rep.size) - np.repeat(np.cumsum(pieces) - pieces, pieces)
        step = (hi - lo)[rep] / pieces[rep]
        new_lo = lo[rep] + s * step
        new_hi = np.where(s == pieces[rep] - 1, hi[rep], lo[rep] + (s + 1) * step)
        lo, hi, kind, prow = new_lo, new_hi, kind[rep], prow[rep]
    order = np.argsort(prow, kind="stable")
    return lo[order], hi[order], kind[order], prow[order]


def panel_nodes(lo, hi, kind, alpha, order):
    """Nodes and weights for ``int f`` over each panel, ``f ~ |t - zero|^alpha * smooth``.

    Returns arrays of shape ``(n_panels, order)``.  On panels of kind 1/2 the
    Jacobi weight is folded into effective weights, so the caller always
    passes full integrand values.
    """
    lo = np.asarray(lo, dtype=float)[:, None]
    hi = np.asarray(hi, dtype=float)[:, None]
    half = (hi - lo) / 2.0
    mid = (hi + lo) / 2.0
    xg, wg = _gauss_legendre(order)
    x = np.broadcast_to(xg, (lo.shape[0], order)).copy()
    w = np.broadcast_to(wg, (lo.shape[0], order)).copy()
    if alpha != 0.0:
        k1 = kind == 1
        k2 = kind == 2
        if np.any(k1):
            xj, wj = _gauss_jacobi(order, 0.0, float(alpha))
            x[k1] = xj
            w[k1] = wj / (1.0 + xj) ** alpha
        if np.any(k2):
            xj, wj = _gauss_jacobi(order, float(alpha), 0.0)
            x[k2] = xj
            w[k2] = wj / (1.0 - xj) ** alpha
    return mid + half * x, half * w


def _circle_coeffs(F, radii):
    j = np.arange(F.coeffs.size)
    with np.errstate(under="ignore"):
        return np.asarray(F.coeffs)[None, :] * np.power.outer(np.asarray(radii, dtype=float), j)


def circle_rule(F, r=1.0, alpha=0.0, spec=None, eps=None):
    """Angles and weights with ``sum w phi(t) ~ (1/2pi) int_0^{2pi} phi(t) dt``.

    Accurate for ``phi = |u|^alpha * smooth`` with ``u(t) = Re F(r e^{it})``
    and ``alpha > -1``.
    """
    spec = spec or DEFAULT_SPEC
    lo, hi, kind, _ = circle_panels(_circle_coeffs(F, [r]), spec, eps)
    t, w = panel_nodes(lo, hi, kind, alpha, spec.panel_order)
    return t.ravel(), w.ravel() / TWO_PI


def mean_abs_power(F, p, r=1.0, spec=None):
    """``(1/2pi) int |Re F(r e^{it})|^p dt`` with the zero-adapted circle rule."""
    t, w = circle_rule(F, r, float(p), spec)
    u = np.real(F(r * np.exp(1j * t)))
    return float(np.sum(w * np.abs(u) ** p))


# -- radial structure ---------------------------------------------------------

def tangency_points(F, n_seed_r=24, n_seed_t=96, iters=60):
    """Points ``z`` in the disk with ``u(z) = 0`` and ``d_t u(z) = 0``.

    These are the points where a circle ``|z| = r`` touches the zero set of
    ``u`` (including saddle points of ``u`` on it).  Found by damped Newton
    from a polar seed grid; the origin is excluded.
    """
    Fp = F.derivative()
    Fpp = Fp.derivative()
    scale = float(np.sum(np.abs(F.coeffs)))
    if scale == 0.0 or F.degree == 0:
        return np.empty(0, dtype=complex)
    r = (np.arange(1, n_seed_r + 1) - 0.5) / n_seed_r
    t = np.arange(n_seed_t) * TWO_PI / n_seed_t
    z = (r[:, None] * np.exp(1j * t)[None, :]).ravel()
    for _ in range(iters):
        f = F(z)
        fp = Fp(z)
        g = 1j * z * fp
        gp = 1j * (fp + z * Fpp(z))
        u, q = f.real, g.real
        a11, a12 = fp.real, -fp.imag
        a21, a22 = gp.real, -gp.imag
        det = a11 * a22 - a12 * a21
        ok = np.abs(det) > 1e-300
        det = np.where(ok, det, 1.0)
        dx = np.where(ok, (a22 * u - a12 * q) / det, 0.0)
        dy = np.where(ok, (-a21 * u + a11 * q) / det, 0.0)
        step = dx + 1j * dy
        big = np.abs(step) > 0.1
        step = np.where(big, step * (0.1 / np.where(big, np.abs(step), 1.0)), step)
        z = z - step
        far = np.abs(z) > 2.0
        z[far] = 2.0 * z[far] / np.abs(z[far])
    f = F(z)
    g = 1j * z * Fp(z)
    good = (np.abs(f.real) < 1e-11 * scale) & (np.abs(g.real) < 1e-10 * scale)
    good &= (np.abs(z) < 1.0) & (np.abs(z) > 1e-9)
    z = z[good]
    if z.size == 0:
        return z
    z = z[np.argsort(np.abs(z), kind="stable")]
    out = []
    for w in z:
        if all(abs(w - o) > 1e-7 for o in out):
            out.append(w)
    return np.array(out, dtype=complex)


def radial_panels(breaks, spec=None, max_len=0.1):
    """Radial panels on [0, 1], graded towards every break point except 1."""
    spec = spec or DEFAULT_SPEC
    ratio, levels = spec.panel_ratio, spec.panel_levels
    lo_all, hi_all = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        half = 0.5 * (b - a)
        left = a + half * ratio ** np.arange(levels, -1, -1)
        if b < 1.0:
            right = b - half * ratio ** np.arange(0, levels + 1)
            edges = np.concatenate([[a], left, right[1:], [b]])
        else:
            edges = np.concatenate([[a], left, [b]])
        for x0, x1 in zip(edges[:-1], edges[1:]):
            k = max(1, int(math.ceil((x1 - x0) / max_len)))
            e = np.linspace(x0, x1, k + 1)
            lo_all.append(e[:-1])
            hi_all.append(e[1:])
    return np.concatenate(lo_all), np.concatenate(hi_all)


class ZeroAdaptedDiskRule:
    """Rule for ``(1/2pi) int_D psi(z) log(1/|z|) dA`` adapted to ``u = Re F``.

    The panel geometry depends only on ``F`` (and ``eps``); node weights are
    produced per exponent ``alpha`` by :meth:`nodes`, accurate for
    ``psi = |u|^alpha * smooth``.
    """

    def __init__(self, F, spec=None, eps=None):
        self.F = F
        self.spec = spec or DEFAULT_SPEC
        self.eps = eps
        self.tangencies = tangency_points(F)
        radii = sorted(set(np.round(np.abs(self.tangencies), 15)))
        breaks = [0.0]
        for rr in radii:
            if rr - breaks[-1] > 1e-10 and rr < 1.0 - 1e-10:
                breaks.append(float(rr))
        breaks.append(1.0)
        self.breaks = np.array(breaks)
        lo, hi = radial_panels(self.breaks, self.spec)
        xr, wr = panel_nodes(lo, hi, np.zeros(lo.size, int), 0.0, self.spec.panel_order)
        self.r = xr.ravel()
        self.wr = (wr.ravel() * self.r * np.log(1.0 / self.r))
        self._panels = circle_panels(_circle_coeffs(F, self.r), self.spec, eps)
        self._cache = {}

    @property
    def n_circles(self):
        return self.r.size

    def nodes(self, alpha=0.0):
        """Complex nodes and weights (flat arrays) for exponent ``alpha``."""
        key = float(alpha)
        if key in self._cache:
            return self._cache[key]
        lo, hi, kind, circ = self._panels
        t, w = panel_nodes(lo, hi, kind, key, self.spec.panel_order)
        z = (self.r[circ][:, None] * np.exp(1j * t)).ravel()
        w = ((self.wr[circ] / TWO_PI)[:, None] * w).ravel()
        keep = w != 0.0
        out = (z[keep], w[keep])
        self._cache[key] = out
        return out

    def integrate(self, psi, alpha=0.0):
        z, w = self.nodes(alpha)
        vals = np.real(psi(z))
        return float(np.sum(w * vals))
