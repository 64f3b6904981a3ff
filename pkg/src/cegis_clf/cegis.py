"""The counter-example guided synthesis loop.

Each iteration filters the samples down to the vertices of their convex hull,
asks the learner for ``(P, K)`` and hands it to the verifier. A counter-example
is appended to the sample set and the loop repeats; the run ends when the
learner is infeasible, the verifier certifies, or a budget/numerical limit hits.

On the choice of ``eps`` and ``eta``: every candidate satisfies
``Xi >= (eps / eta**2) I`` on the convex hull of the samples, so ``eta`` close
to ``eps`` with ``eps`` not too small removes more of the uncertainty set per
iteration and lowers the verifier's Lipschitz constant ``1/eps``. The price is
a smaller learner feasible set. Neither is tuned automatically.
"""

import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import certify, learner, verifier
from .counterexamples import CounterexampleSet
from .errors import DuplicateCounterexample, SolverStalled
from .system import Candidate

CERTIFIED = "certified"
INFEASIBLE = "infeasible"
BUDGET_EXHAUSTED = "budget_exhausted"
STALLED = "stalled"


@dataclass
class IterationRecord:
    iteration: int
    n_samples: int
    hull: List[int]
    margin: float
    learner_status: str
    P: Optional[np.ndarray] = None
    K: Optional[np.ndarray] = None
    lambda_hat: Optional[float] = None
    method: Optional[str] = None
    evaluations: int = 0
    certified: bool = False
    gap: Optional[float] = None
    counterexample: Optional[tuple] = None
    timing: dict = field(default_factory=dict)


@dataclass
class CegisReport:
    status: str
    iterations: int
    candidate: Optional[Candidate]
    counterexamples: CounterexampleSet
    trace: List[IterationRecord]
    config: dict
    timing: dict = field(default_factory=dict)
    message: str = ""
    hints: dict = field(default_factory=dict)
    certification: Optional[dict] = None


def config_echo(spec):
    return {
        "eps": spec.eps,
        "eta": spec.eta,
        "w_max": spec.w_max,
        "n_t": int(spec.n_t),
        "seed": int(spec.seed),
        "accept_threshold": spec.threshold,
        "max_iters": int(spec.max_iters),
        "verifier_budget": spec.budget(),
        "sens_max_steps": int(spec.sens_max_steps),
        "vertex_filter": bool(spec.vertex_filter),
    }


def run(spec, log=None, check=True):
    """Run the synthesis loop for ``spec`` and return a :class:`CegisReport`.

    With ``check=True`` a certified candidate is re-checked independently with
    :func:`cegis_clf.certify.check` and the outcome stored in the report.
    """
    spec.validate()
    t_start = time.perf_counter()
    rng = np.random.default_rng(spec.seed)
    cs = CounterexampleSet(spec.n, spec.m, scale=spec.omega.scale())
    cs.add(*spec.initial())
    trace = []
    totals = {"learner": 0.0, "verifier": 0.0, "hull": 0.0}

    def finish(status, candidate=None, message="", hints=None):
        totals["total"] = time.perf_counter() - t_start
        return CegisReport(status, len(trace), candidate, cs, trace, config_echo(spec),
                           totals, message, hints or {})

    for it in range(1, int(spec.max_iters) + 1):
        t0 = time.perf_counter()
        hull = cs.hull_indices() if spec.vertex_filter else list(range(len(cs)))
        t1 = time.perf_counter()
        problem = learner.LearnerProblem([cs.items[j] for j in hull], spec.eps, spec.eta, spec.w_max)
        try:
            sol = learner.solve(problem)
        except SolverStalled as exc:
            return finish(STALLED, message=f"learner: {exc}")
        t2 = time.perf_counter()
        totals["hull"] += t1 - t0
        totals["learner"] += t2 - t1
        rec = IterationRecord(it, len(cs), hull, sol.margin, sol.status,
                              timing={"hull": t1 - t0, "learner": t2 - t1})
        trace.append(rec)
        if not sol.feasible:
            hints = {
                "margin_deficit": spec.eps - sol.margin,
                "suggestion": "retry with a smaller eps, a larger eta or a larger w_max",
            }
            return finish(INFEASIBLE, message="learner LMI infeasible", hints=hints)

        cand = learner.extract_candidate(sol.rescaled(spec.eps))
        rec.P, rec.K = cand.P, cand.K
        res = verifier.verify(cand, spec, rng)
        t3 = time.perf_counter()
        totals["verifier"] += t3 - t2
        rec.timing["verifier"] = t3 - t2
        rec.lambda_hat, rec.method = res.lambda_hat, res.method
        rec.evaluations, rec.certified, rec.gap = res.evaluations, res.certified, res.gap
        if log is not None:
            log(f"iter {it}: samples={len(cs)} hull={len(hull)} margin={sol.margin:.6g} "
                f"lambda_hat={res.lambda_hat:.6g} ({res.method}, {res.evaluations} evals)")
        if res.certified:
            report = finish(CERTIFIED, cand)
            if check:
                t4 = time.perf_counter()
                report.certification = certify.check(cand, spec.omega, seed=spec.seed)
                report.timing["certify"] = time.perf_counter() - t4
            return report
        rec.counterexample = res.minimizer
        try:
            cs.add(*res.minimizer)
        except DuplicateCounterexample as exc:
            return finish(STALLED, message=f"verifier: {exc}")
    return finish(BUDGET_EXHAUSTED, message=f"no certificate after {spec.max_iters} iterations")


def iteration_trace(report):
    """Per-iteration ``(margin, lambda_hat, method)`` triples."""
    return [(r.margin, r.lambda_hat, r.method) for r in report.trace]
