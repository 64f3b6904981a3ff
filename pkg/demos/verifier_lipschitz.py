"""
What the verifier is minimizing
===============================

For P = I and K = 0 the smallest eigenvalue of Xi(A) equals 1 - sigma_max(A).
On the segment A = diag(a, 0), a in [0, 1.2], the objective is 1 - a and the
first violation sits at a = 1. This script runs the global search, a local
descent and the grid oracle on that segment.
"""

import numpy as np

import cegis_clf as cc

B = np.zeros((2, 1))
omega = cc.IntervalAB(np.zeros((2, 2)), np.diag([1.2, 0.0]), B)
cand = cc.Candidate(np.eye(2), np.zeros((1, 2)))

for a in (0.0, 0.5, 1.0, 1.2):
    print(f"a = {a:.1f}: lambda_min = {cc.objective(cand, np.diag([a, 0.0]), B):+.4f}")

# With threshold 0 the search stops at the first violating point it samples.
res = cc.global_minimize(cand, omega, budget=500, threshold=0.0)
print(f"global: lambda_hat = {res.lambda_hat:+.4f} after {res.evaluations} evaluations")

# Running the full budget instead reports a gap: how far the true minimum can
# lie below the returned value, given the Lipschitz constant.
res = cc.global_minimize(cand, omega, budget=500, threshold=-np.inf)
print(f"full budget: lambda_hat = {res.lambda_hat:+.6f}, residual gap {res.gap:.2e}")

(A, _), val = cc.sensitivity_refine(cand, omega, (np.diag([0.3, 0.0]), B))
print(f"descent from a = 0.3 ends at a = {A[0, 0]:.4f}, value {val:+.4f}")

grid_min, _ = cc.grid_oracle(cand, omega, 1e-3)
print(f"grid oracle at h = 1e-3: {grid_min:+.4f}")

# Lipschitz constants for a learner candidate with eps = 0.1, eta = 1.
budget = cc.lipschitz_budget(cand, eps=0.1, eta=1.0)
print("ell_cl = %.1f, ell_ab = %.1f, safe radius = %.3f" % (budget.ell_cl, budget.ell_ab,
                                                           budget.safe_radius))
