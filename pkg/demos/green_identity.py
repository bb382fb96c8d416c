import numpy as np

from qrlab.analytic_core import ComplexSeries
from qrlab.harness import random_qr_family
from qrlab.identities import eps_monotonicity_check, green_identity_details, green_representation_residual
from qrlab.planar_harmonic import PlanarHarmonicMap

# u = Re z^2 vanishes on two diameters, so |u|^(p-2) is singular there
m = PlanarHarmonicMap(ComplexSeries([0, 0, 1]), ComplexSeries([0]))
for p in (1.2, 1.5, 2.0):
    d = green_identity_details(m, p)
    print(f"p={p}: mean|u|^p={d.lhs:.15f} potential side={d.rhs:.15f} residual={d.residual:.1e}")
    print(f"   eps path: {d.regularized[0]:.6f} -> {d.regularized[-1]:.12f}, gap to limit {d.eps_gap:.2e}")
    print("   monotone:", eps_monotonicity_check(m, p))

# Random quasiregular maps, some with interior zeros and tangencies
for m in random_qr_family(3, 5, degree=8):
    d = green_identity_details(m, 1.25)
    print(f"residual {d.residual:.2e} with {d.n_nodes} nodes, {d.tangencies} tangencies")

# Poisson plus Green potential recovers w = |z|^4 + Re z^3 from Delta w = 16|z|^2
w = lambda z: np.abs(z) ** 4 + np.real(z**3)
print(green_representation_residual(w, lambda z: 16.0 * np.abs(z) ** 2, 0.5 - 0.3j))
