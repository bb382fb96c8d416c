"""Closed-form constants of the Riesz-type inequalities.

Everything is evaluated in double precision using simplified forms
(``tan(pi/2p)**p`` rather than ``tan**(p-1) / cot``).  Each function accepts
``precise=True`` to run the unsimplified formula in 34-digit arithmetic,
which the tests use as a cross-check.
"""

import math
from dataclasses import dataclass

import mpmath

from .errors import DomainError


def check_p(p):
    if not (1.0 < p <= 2.0):
        raise DomainError(f"p must lie in (1, 2], got {p!r}")


def check_K(K):
    if not K >= 1.0 or not math.isfinite(K):
        raise DomainError(f"K must be a finite number >= 1, got {K!r}")


def check_n(n):
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")


@dataclass(frozen=True)
class ConstantQuery:
    p: float
    K: float = 1.0
    n: int = 2

    def __post_init__(self):
        check_p(self.p)
        check_K(self.K)
        check_n(self.n)

    @property
    def k(self):
        return (self.K - 1.0) / (self.K + 1.0)

    @property
    def pbar(self):
        return max(self.p, self.p / (self.p - 1.0))


def pichorides_AB(p, precise=False):
    """``A = tan(pi/2p)**p`` and ``B = sin(pi/2p)**(p-1) / cos(pi/2p)``."""
    check_p(p)
    if precise:
        with mpmath.workdps(34):
            x = mpmath.pi / (2 * mpmath.mpf(p))
            A = mpmath.tan(x) ** (p - 1) / mpmath.cot(x)
            B = mpmath.sin(x) ** (p - 1) / mpmath.cos(x)
            return float(A), float(B)
    x = math.pi / (2.0 * p)
    return math.tan(x) ** p, math.sin(x) ** (p - 1.0) / math.cos(x)


def verbitsky_CD(p, precise=False):
    """``C = cos(pi/2p)**(-p)`` and ``D = tan(pi/2p)``."""
    check_p(p)
    if precise:
        with mpmath.workdps(34):
            x = mpmath.pi / (2 * mpmath.mpf(p))
            return float(mpmath.cos(x) ** (-p)), float(mpmath.tan(x))
    x = math.pi / (2.0 * p)
    return math.cos(x) ** -p, math.tan(x)


def c_theorem1(n, K, p, precise=False):
    """p-th root of ``(1 + (n-1)K^2)(1 + (p-2)/(n K^2)) / (p - 1)``."""
    check_n(n)
    check_K(K)
    check_p(p)
    if precise:
        with mpmath.workdps(34):
            K2 = mpmath.mpf(K) ** 2
            val = (1 + (n - 1) * K2) * (1 + (mpmath.mpf(p) - 2) / (n * K2)) / (mpmath.mpf(p) - 1)
            return float(val ** (1 / mpmath.mpf(p)))
    K2 = K * K
    val = (1.0 + (n - 1) * K2) * (1.0 + (p - 2.0) / (n * K2)) / (p - 1.0)
    return val ** (1.0 / p)


def c_theorem2(p, K, precise=False):
    """``(A(p) + (K^2 - 1) B(p))**(1/p)``; equals ``tan(pi/2p)`` at ``K = 1``."""
    check_K(K)
    A, B = pichorides_AB(p, precise)
    if precise:
        with mpmath.workdps(34):
            return float((A + (mpmath.mpf(K) ** 2 - 1) * B) ** (1 / mpmath.mpf(p)))
    return (A + (K * K - 1.0) * B) ** (1.0 / p)


def d_theorem2(p, K, precise=False):
    """``(C(p) + (K^2 - 1) D(p))**(1/p)``; equals ``sec(pi/2p)`` at ``K = 1``."""
    check_K(K)
    C, D = verbitsky_CD(p, precise)
    if precise:
        with mpmath.workdps(34):
            return float((C + (mpmath.mpf(K) ** 2 - 1) * D) ** (1 / mpmath.mpf(p)))
    return (C + (K * K - 1.0) * D) ** (1.0 / p)


def classical_constants(p):
    """``(sec, csc, cot)`` of ``pi/(2 pbar)`` and ``pbar = max(p, p/(p-1))``."""
    if not p > 1.0:
        raise DomainError(f"p must exceed 1, got {p!r}")
    pbar = max(p, p / (p - 1.0))
    x = math.pi / (2.0 * pbar)
    return 1.0 / math.cos(x), 1.0 / math.sin(x), 1.0 / math.tan(x), pbar


def initial_condition_ok(theta, p, k):
    """Angular hypothesis on ``theta = arg f(0)``.

    Returns ``(general, strict)``: ``general`` is
    ``cos(p theta) + 4k/(1-k)^2 |cos theta|^p >= 0`` and ``strict`` is
    ``|theta| < pi/(2p)``.  ``theta = None`` (``f(0) = 0``) satisfies both.
    """
    check_p(p)
    if not 0.0 <= k < 1.0:
        raise DomainError(f"k must lie in [0, 1), got {k!r}")
    if theta is None:
        return True, True
    general = math.cos(p * theta) + 4.0 * k / (1.0 - k) ** 2 * abs(math.cos(theta)) ** p
    # cos(1.5 pi) evaluates to ~-1.8e-16; exact zeros of the left side count as >= 0
    return bool(general >= -1e-14), bool(abs(theta) < math.pi / (2.0 * p))


def all_constants(p, K=1.0, n=2):
    """Every constant for one parameter triple, keyed as in the CLI output."""
    q = ConstantQuery(p, K, n)
    A, B = pichorides_AB(q.p)
    C, D = verbitsky_CD(q.p)
    sec, csc, cot, pbar = classical_constants(q.p)
    return {
        "A": A, "B": B, "C": C, "D": D,
        "c_thm1": c_theorem1(q.n, q.K, q.p),
        "c_thm2": c_theorem2(q.p, q.K),
        "d_thm2": d_theorem2(q.p, q.K),
        "sec": sec, "csc": csc, "cot": cot, "pbar": pbar,
    }
