"""
Interval-uncertain 4-state system
=================================

Every entry of A lives in its own interval and the input enters through the
last state only. The set has 2**16 corners, so a single polytopic LMI would
need 65536 constraints; the synthesis loop gets by with a handful of samples.
"""

import numpy as np

import cegis_clf as cc

spec = cc.load_problem(cc.bundled_problem("polytopic_4x4"))
print("uncertain entries:", spec.omega.q)

# The log line per iteration shows how many samples the learner saw, the LMI
# margin and what the verifier found for the resulting candidate.
report = cc.run(spec, log=print)
print("status:", report.status, "after", report.iterations, "iterations")

P, K = report.candidate.P, report.candidate.K
np.set_printoptions(precision=4, suppress=True)
print("P =\n", P)
print("K =", K)

# lambda_min(Xi) is concave in (A, B), so the smallest value over the box is
# attained at a corner: checking all 65536 corners is an exact certificate.
passed, worst, _ = cc.certify_vertices(report.candidate, spec.omega)
print(f"worst corner value {worst:.4f}, certificate {'holds' if passed else 'FAILS'}")

# The same check for the published controller.
ref = cc.load_candidate(cc.bundled_problem("polytopic_4x4_reference_candidate"))
print("published candidate worst corner: %.4f" % cc.certify_vertices(ref, spec.omega, 1e-3)[1])
