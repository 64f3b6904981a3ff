"""LMI learner.

Given the current sample vertices ``(A_h, B_h)`` it looks for ``X`` and ``W`` with

    [[X, X A_h^T + W^T B_h^T], [A_h X + B_h W, X]] >= eps I   for every h,
    X <= eta I,   |W_ij| <= w_max.

The feasibility problem is solved in margin form: maximize ``t`` subject to
every block being ``>= t I``. The problem is feasible iff ``t* >= eps``.
The margin is always recomputed from the returned ``(X, W)`` with a dense
eigensolver, so a ``Feasible`` answer never rests on solver tolerances.
"""

import warnings
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import DimensionError, InvalidState, SolverStalled
from .spectral import inverse_spd, lambda_max, lambda_min_batch, sym
from .system import Candidate

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
FEAS_TOL = 1e-7


@dataclass
class LearnerProblem:
    vertices: List[Tuple[np.ndarray, np.ndarray]]
    eps: float
    eta: float
    w_max: float

    @property
    def n(self):
        return self.vertices[0][0].shape[0]

    @property
    def m(self):
        return self.vertices[0][1].shape[1]


@dataclass
class LearnerSolution:
    X: Optional[np.ndarray]
    W: Optional[np.ndarray]
    margin: float
    status: str
    solver_margin: float = float("nan")

    @property
    def feasible(self):
        return self.status == FEASIBLE

    def rescaled(self, target):
        """Scale ``(X, W)`` down so that the margin equals ``target``.

        The blocks are homogeneous in ``(X, W)``, so the scaled pair still
        satisfies every constraint; it is the smallest ``X`` along this ray,
        which makes ``P = X^-1`` as large as the constraints allow.
        """
        if not self.feasible:
            raise InvalidState("cannot rescale an infeasible solution")
        s = target / self.margin
        if s >= 1.0:
            return self
        return LearnerSolution(self.X * s, self.W * s, self.margin * s, self.status,
                               self.solver_margin * s)


def blocks(X, W, vertices):
    """Stack of the learner LMI blocks, one per vertex."""
    X = sym(X)
    n = X.shape[0]
    out = np.empty((len(vertices), 2 * n, 2 * n))
    for h, (A, B) in enumerate(vertices):
        lower = A @ X + B @ W
        out[h, :n, :n] = X
        out[h, n:, n:] = X
        out[h, n:, :n] = lower
        out[h, :n, n:] = lower.T
    return out


def block_margin(X, W, vertices):
    return float(np.min(lambda_min_batch(blocks(X, W, vertices))))


def solve(problem, solver="CLARABEL"):
    """Maximize the uniform eigenvalue margin of the learner LMIs.

    Returns a ``LearnerSolution`` that is ``Feasible`` iff the verified margin
    is at least ``eps``. Raises :class:`SolverStalled` when the SDP backend
    fails to return a usable point.
    """
    import cvxpy as cp

    verts = [(np.asarray(A, float), np.asarray(B, float)) for A, B in problem.vertices]
    if not verts:
        raise DimensionError("learner needs at least one vertex")
    n, m = problem.n, problem.m
    for A, B in verts:
        if A.shape != (n, n) or B.shape != (n, m):
            raise DimensionError("inconsistent vertex shapes")

    X = cp.Variable((n, n), symmetric=True)
    W = cp.Variable((m, n))
    t = cp.Variable()
    I2 = np.eye(2 * n)
    cons = [problem.eta * np.eye(n) - X >> 0, cp.abs(W) <= problem.w_max]
    for A, B in verts:
        off = X @ A.T + W.T @ B.T
        blk = cp.bmat([[X, off], [off.T, X]])
        cons.append(0.5 * (blk + blk.T) - t * I2 >> 0)
    prob = cp.Problem(cp.Maximize(t), cons)
    try:
        with warnings.catch_warnings():
            # accuracy is judged by the eigenvalue re-check below, not by solver status
            warnings.simplefilter("ignore", UserWarning)
            prob.solve(solver=solver)
    except cp.error.SolverError as exc:
        raise SolverStalled(str(exc)) from exc
    if prob.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE) or X.value is None:
        raise SolverStalled(f"SDP solver returned status {prob.status!r}")

    Xv = sym(X.value)
    Wv = np.clip(np.asarray(W.value).reshape(m, n), -problem.w_max, problem.w_max)
    # pull X back inside the eta bound if the solver overshot it slightly
    top = lambda_max(Xv)
    if top > problem.eta:
        Xv = Xv * (problem.eta / top)
        Wv = Wv * (problem.eta / top)
    margin = block_margin(Xv, Wv, verts)
    status = FEASIBLE if margin >= problem.eps else INFEASIBLE
    return LearnerSolution(Xv, Wv, margin, status, float(t.value))


def extract_candidate(sol):
    """``P = X^-1`` and ``K = W X^-1``."""
    if not sol.feasible:
        raise InvalidState("no candidate: learner problem is infeasible")
    P = inverse_spd(sol.X)
    K = sol.W @ P
    return Candidate(P, K)
