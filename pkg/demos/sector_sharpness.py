import math

from qrlab.harness import sharpness_probe, sharpness_report

# The sector family approaches tan(pi/2p) as beta fills the admissible range
for p in (1.25, 1.5, 2.0):
    target = math.tan(math.pi / (2 * p))
    for bf in (0.5, 0.9, 0.99, 0.999):
        r = sharpness_probe(p, 0.0, bf)
        print(f"p={p} beta={bf}: ratio {r.measured_ratio:.6f}, target {target:.6f}, gap {r.gap:.2e}")

# With dilatation k the measured ratio is K tan(beta), still below c(K, p)
r = sharpness_report(1.5, 0.1, 0.99)
print(r.lhs, r.evidence["predicted_ratio"], r.rhs, r.status)
