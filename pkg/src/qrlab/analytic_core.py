"""Finite power series on the closed unit disk.

Holomorphic functions are carried as polynomials ``a_0 + a_1 z + ... + a_d z^d``.
Transcendental functions enter through truncated Taylor series (see
:func:`sector_series`).  Polynomials extend smoothly to the closed disk, so
boundary values are evaluated directly at ``|z| = 1``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class ComplexSeries:
    """Immutable polynomial ``sum_j coeffs[j] * z**j``.

    Trailing zero coefficients are kept, so ``degree`` is ``len(coeffs) - 1``
    and not the algebraic degree.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_pairs(cls, pairs):
        """Build from a list of ``[re, im]`` pairs (the map-file layout)."""
        return cls([complex(float(re), float(im)) for re, im in pairs])

    def to_pairs(self):
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    @property
    def degree(self):
        return self.coeffs.size - 1

    def __call__(self, z):
        return eval_series(self, z)

    def __eq__(self, other):
        if not isinstance(other, ComplexSeries):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        return f"ComplexSeries({self.coeffs.tolist()!r})"

    def __add__(self, other):
        other = _as_series(other)
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=complex)
        out[: self.coeffs.size] += self.coeffs
        out[: other.coeffs.size] += other.coeffs
        return ComplexSeries(out)

    __radd__ = __add__

    def __neg__(self):
        return ComplexSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-_as_series(other))

    def __rsub__(self, other):
        return _as_series(other) - self

    def __mul__(self, other):
        if isinstance(other, ComplexSeries):
            return series_product(self, other)
        return ComplexSeries(self.coeffs * complex(other))

    __rmul__ = __mul__

    def conj_coeffs(self):
        """Series whose coefficients are conjugated: ``conj(s(conj(z)))``."""
        return ComplexSeries(np.conj(self.coeffs))

    def derivative(self):
        return derivative_series(self)

    def antiderivative(self):
        return antiderivative_series(self)

    def scaled(self, r):
        """Coefficients of ``z -> s(r z)``."""
        return ComplexSeries(self.coeffs * float(r) ** np.arange(self.coeffs.size))


def _as_series(x):
    if isinstance(x, ComplexSeries):
        return x
    return ComplexSeries([complex(x)])


def eval_series(s, z):
    """Evaluate ``s`` at ``z`` (scalar or array) by Horner's rule."""
    z = np.asarray(z)
    c = s.coeffs
    acc = np.full(z.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        acc = acc * z + a
    if acc.ndim == 0:
        return complex(acc)
    return acc


def derivative_series(s):
    c = s.coeffs
    if c.size == 1:
        return ComplexSeries([0.0])
    return ComplexSeries(c[1:] * np.arange(1, c.size))


def antiderivative_series(s):
    c = s.coeffs
    out = np.zeros(c.size + 1, dtype=complex)
    out[1:] = c / np.arange(1, c.size + 1)
    return ComplexSeries(out)


def series_product(a, b, max_degree=None):
    c = np.convolve(a.coeffs, b.coeffs)
    if max_degree is not None:
        c = c[: max_degree + 1]
    return ComplexSeries(c)


def principal_power(w, s):
    """``w**s`` with ``arg w`` in ``(-pi, pi]``; ``0**s`` is 0 for ``Re s > 0``."""
    w = np.asarray(w, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(s * np.log(w))
    if np.real(s) > 0:
        out = np.where(w == 0, 0.0, out)
    if out.ndim == 0:
        return complex(out)
    return out


def _check_beta(beta):
    if not 0.0 < beta < math.pi / 2:
        raise DomainError(f"sector half-angle must lie in (0, pi/2), got {beta!r}")


def sector_boundary_value(beta, t):
    """Boundary value of ``((1+z)/(1-z))**(2 beta/pi)`` at ``z = e^{it}``.

    Uses ``(1+e^{it})/(1-e^{it}) = i cot(t/2)``, so the modulus is
    ``|cot(t/2)|**(2 beta/pi)`` and the argument is ``+beta`` for ``t > 0``,
    ``-beta`` for ``t < 0``.  ``t`` may be an array; ``t = 0`` is rejected.
    """
    _check_beta(beta)
    t = np.asarray(t, dtype=float)
    if np.any(t == 0.0):
        raise DomainError("sector map is singular at t = 0")
    gamma = 2.0 * beta / math.pi
    modulus = np.abs(1.0 / np.tan(t / 2.0)) ** gamma
    out = modulus * np.exp(1j * beta * np.sign(t))
    if out.ndim == 0:
        return complex(out)
    return out


def sector_map(beta, z):
    """Closed form ``((1+z)/(1-z))**(2 beta/pi)`` inside the disk."""
    _check_beta(beta)
    z = np.asarray(z, dtype=complex)
    return principal_power((1 + z) / (1 - z), 2.0 * beta / math.pi)


def sector_series(beta, degree):
    """Taylor coefficients of the sector map up to ``z**degree``.

    ``log((1+z)/(1-z)) = 2 sum_{j odd} z^j / j`` is exponentiated with the
    recurrence ``n b_n = sum_k k a_k b_{n-k}``.
    """
    _check_beta(beta)
    gamma = 2.0 * beta / math.pi
    a = np.zeros(degree + 1)
    a[1::2] = 2.0 * gamma / np.arange(1, degree + 1, 2)
    b = np.zeros(degree + 1)
    b[0] = 1.0
    ka = np.arange(degree + 1) * a
    for n in range(1, degree + 1):
        b[n] = np.dot(ka[1 : n + 1], b[n - 1 :: -1][:n]) / n
    return ComplexSeries(b)
