import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import settings

from qrlab.analytic_core import ComplexSeries
from qrlab.harness import random_qr_family
from qrlab.identities import finite_diff_laplacian
from qrlab.planar_harmonic import PlanarHarmonicMap, qr_bound

settings.register_profile("qrlab", deadline=None, max_examples=40)
settings.load_profile("qrlab")

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def random_series(rng, degree, scale=1.0):
    j = np.arange(degree + 1)
    c = (rng.uniform(-1, 1, degree + 1) + 1j * rng.uniform(-1, 1, degree + 1)) / (j + 1.0) ** 2
    return ComplexSeries(scale * c)


def random_map(rng, degree, k=0.3):
    g = random_series(rng, degree)
    h = random_series(rng, degree, scale=k / 4)
    return PlanarHarmonicMap(g, h)


def dyadic_samples(n_maps=30, per_map=10, seed=11):
    """(map, point, k) triples with |f| and |u| above 0.1; points lie on a 2^-30 lattice."""
    rng = np.random.default_rng(seed)
    out = []
    for m in random_qr_family(seed, n_maps, degree=8, k_max=0.3):
        k, _ = qr_bound(m)
        taken = 0
        while taken < per_map:
            z = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
            z = complex(round(z.real * 2**30), round(z.imag * 2**30)) / 2**30
            f = complex(m(z))
            if abs(f) > 0.1 and abs(f.real) > 0.1:
                out.append((m, z, k))
                taken += 1
    return out


def mp_map(m):
    """``f`` evaluated in 40-digit arithmetic, so stencil differences do not cancel."""
    g = [mp.mpc(c.real, c.imag) for c in m.g.coeffs]
    h = [mp.mpc(c.real, c.imag) for c in m.h.coeffs]

    def f(z):
        z = mp.mpc(z.real, z.imag)
        return mp.polyval(g[::-1], z) + mp.conj(mp.polyval(h[::-1], z))
    return f


FD_STEP = 2.0**-20


def fd(phi, z):
    # dyadic point and step keep the stencil exact in binary; 40 digits remove cancellation
    with mp.workdps(40):
        return finite_diff_laplacian(phi, z, step=FD_STEP)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
