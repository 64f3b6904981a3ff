"""
When no quadratic certificate exists
====================================

The first state evolves as x1+ = 2 x1 whatever the input does, so no
feedback can stabilize it. The learner reports a margin below eps on the
very first sample and the loop stops with a hint instead of a candidate.
"""

import numpy as np

import cegis_clf as cc

spec = cc.load_problem(cc.bundled_problem("uncontrollable_2x2"))
for eps, eta in [(1e-3, 1e3), (1e-1, 1.0)]:
    spec.eps, spec.eta = eps, eta
    report = cc.run(spec)
    print(f"eps={eps:g} eta={eta:g}: {report.status} at iteration {report.iterations}, "
          f"margin {report.trace[0].margin:.2e}")
print("hint:", report.hints["suggestion"])

# The scalar version makes the margin explicit. The LMI block is
# [[X, 2X], [2X, X]], with eigenvalues 3X and -X, so the best achievable
# margin is 0 (reached as X -> 0).
sol = cc.learner.solve(cc.LearnerProblem([(np.array([[2.0]]), np.array([[0.0]]))],
                                         eps=1e-3, eta=1.0, w_max=10.0))
print(f"scalar margin {sol.margin:.2e}, X = {sol.X[0, 0]:.2e}, status {sol.status}")
