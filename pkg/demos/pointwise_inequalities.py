import numpy as np

from qrlab.constants import pichorides_AB
from qrlab.harness import pichorides_extension_gap, verify_pointwise_pichorides, verify_pointwise_verbitsky

# Grid minima of the two trigonometric inequalities behind the planar estimates
for p in (1.1, 1.25, 1.5, 1.75, 2.0):
    a = verify_pointwise_pichorides(p)
    b = verify_pointwise_verbitsky(p)
    ext = pichorides_extension_gap(p)
    print(f"p={p:<5} gap min {a.min_value: .2e} at x={a.argmin: .4f}   "
          f"second min {b.min_value: .2e} at t={b.argmin: .4f}   extension {ext.min_value: .2e}")

# The gap on a coarse grid; it touches zero only at isolated points
x = np.linspace(-np.pi, np.pi, 9)
A, B = pichorides_AB(1.5)
print(np.round(A * np.abs(np.cos(x)) ** 1.5 - B * np.cos(1.5 * x) - np.abs(np.sin(x)) ** 1.5, 6))
