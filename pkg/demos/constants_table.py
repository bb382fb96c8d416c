import numpy as np

from qrlab.constants import all_constants, c_theorem2, d_theorem2

# Sharp constants for a few exponents at K = 1 reduce to the classical ones
for p in (1.1, 1.25, 1.5, 1.75, 2.0):
    c = all_constants(p, 1.0, 2)
    print(f"p={p:<5} c={c['c_thm2']:.12f} tan={c['cot']:.12f} d={c['d_thm2']:.12f} sec={c['csc']:.12f}")

# Growth in the quasiregularity constant
Ks = np.linspace(1.0, 5.0, 9)
for p in (1.25, 1.5, 2.0):
    row = " ".join(f"{c_theorem2(p, K):8.4f}" for K in Ks)
    print(f"c(K, {p}):", row)
    row = " ".join(f"{d_theorem2(p, K):8.4f}" for K in Ks)
    print(f"d(K, {p}):", row)
