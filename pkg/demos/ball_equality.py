import numpy as np

from qrlab.ball_harmonic import LinearBallMap, singular_norms
from qrlab.harness import check_theorem1_ball, equality_case_identity

# The identity map attains equality at p = 2 in every dimension
for n in (2, 3, 5, 10):
    r = equality_case_identity(n)
    print(n, r.constant, r.ratio, r.status)

# Stretching one axis raises K and leaves room in the inequality
for s in (1.0, 1.5, 2.0, 4.0):
    A = np.diag([1.0, 1.0, s])
    for p in (1.5, 2.0):
        r = check_theorem1_ball(LinearBallMap(A, None), p)
        print(f"s={s} p={p} K={r.params['K']:.2f} lhs={r.lhs:.6f} rhs={r.rhs:.6f}", r.status)

print(singular_norms(np.array([[2.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.5]])))
