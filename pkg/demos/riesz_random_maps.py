import numpy as np

from qrlab.harness import check_theorem1_plane, check_theorem2, random_qr_family, summarize

# Ratios ||f||_p / (c ||Re f||_p) across random families; all should stay below 1
for p in (1.25, 1.5, 2.0):
    for k in (0.0, 0.1, 0.3):
        reps = [check_theorem1_plane(m, p) for m in random_qr_family(11, 50, k_max=k)]
        ratios = np.array([r.ratio for r in reps])
        print(f"p={p} k={k}: max ratio {ratios.max():.4f}, median {np.median(ratios):.4f}", summarize(reps))

# Maps with positive real part satisfy the range hypothesis of the conjugate estimate
reps = []
for m in random_qr_family(5, 30, degree=6, k_max=0.1, positive=True):
    reps.extend(check_theorem2(m, 1.5))
print(summarize(reps))
print(max(r.ratio for r in reps if r.theorem_id == "theorem2a"))
