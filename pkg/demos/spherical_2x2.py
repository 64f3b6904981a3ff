"""
Ellipsoidal uncertainty
=======================

A is only known to lie in a ball around a nominal matrix (Q = 5 I in
column-stacked coordinates). An ellipsoid has no vertices, so the global
verifier searches its bounding box with the quadratic form as a constraint.
"""

import numpy as np

import cegis_clf as cc

spec = cc.load_problem(cc.bundled_problem("spherical_2x2"))
print("nominal A:\n", spec.omega.A_center)

report = cc.run(spec, log=print)
print("status:", report.status)
for rec in report.trace:
    kind = "certified" if rec.certified else f"counter-example via {rec.method}"
    print(f"  iteration {rec.iteration}: lambda_hat = {rec.lambda_hat:+.4f} ({kind})")

cand = report.candidate
print("K =", np.round(cand.K, 4))

# Monte-Carlo spot check with 1e5 points drawn uniformly inside the ball.
passed, worst, _ = cc.certify_sampled(cand, spec.omega, n_samples=100_000)
print(f"sampled worst {worst:.4f}, passed = {passed}")

# The nominal closed loop has both eigenvalues inside the unit disc.
A_cl = cc.closed_loop(spec.omega.A_center, spec.omega.B, cand.K)
print("nominal closed-loop |eig|:", np.abs(np.linalg.eigvals(A_cl)).round(4))
