"""Verifier: minimize ``lambda_min(Xi(A + B K))`` over the uncertainty set.

The objective is Lipschitz in ``(A, B)``: with ``||P|| <= 1/eps`` its constant
w.r.t. the closed-loop matrix is ``1/eps`` and w.r.t. ``(A, B)`` at most
``max(1, ||K||)/eps``. The global search is DIRECT over the set's box
parameterization; an optional multi-start projected descent driven by the
eigenvalue derivative runs first and returns early when it already finds a
violation.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .direct import direct_minimize
from .errors import DimensionError
from .spectral import lambda_min_batch, op_norm, xi, xi_batch
from .system import closed_loop

GLOBAL = "global"
SENSITIVITY = "sensitivity"
EIG_GAP_TOL = 1e-8
FD_STEP = 1e-6
JONES_EPS = 1e-4
PENALTY_FACTOR = 10.0


@dataclass
class VerifierResult:
    lambda_hat: float
    minimizer: Tuple[np.ndarray, np.ndarray]
    method: str
    evaluations: int
    certified: bool
    gap: float = float("inf")
    z: Optional[np.ndarray] = field(default=None, repr=False)


@dataclass
class LipschitzBudget:
    ell_cl: float
    ell_ab: float
    safe_radius: float


def objective(cand, A, B):
    """``lambda_min(Xi(A + B K))`` for the candidate's ``P`` and ``K``."""
    A_cl = closed_loop(A, B, cand.K)
    if A_cl.shape != cand.P.shape:
        raise DimensionError("candidate and system dimensions differ")
    return float(np.linalg.eigvalsh(xi(cand.P, A_cl))[0])


def objective_batch(cand, A, B):
    return lambda_min_batch(xi_batch(cand.P, A + B @ cand.K))


def lipschitz_budget(cand, eps, eta):
    ell = 1.0 / eps
    return LipschitzBudget(ell, ell * max(1.0, op_norm(cand.K)), eps**2 / eta**2)


class _Objective:
    """Objective on the z-coordinates of a BoxParam, with evaluation counting."""

    def __init__(self, cand, param):
        self.cand, self.param = cand, param
        self.calls = 0

    def batch(self, Z):
        A, B = self.param.decode_batch(Z)
        self.calls += A.shape[0]
        return objective_batch(self.cand, A, B)

    def __call__(self, z):
        return float(self.batch(np.asarray(z, float).reshape(1, -1))[0])

    def value_and_grad(self, z):
        """Value and gradient in z; central differences near a repeated eigenvalue."""
        A, B = self.param.decode(z)
        P, K = self.cand.P, self.cand.K
        n = P.shape[0]
        w, V = np.linalg.eigh(xi(P, A + B @ K))
        self.calls += 1
        if w.size > 1 and w[1] - w[0] < EIG_GAP_TOL * max(1.0, abs(w[0])):
            return float(w[0]), self._fd_grad(z)
        v1, v2 = V[:n, 0], V[n:, 0]
        # d lambda / d A_cl = 2 P v2 v1^T, chained through A_cl = A + B K
        G = 2.0 * np.outer(P @ v2, v1)
        dvec = np.concatenate([G.ravel(), (G @ K.T).ravel()])
        return float(w[0]), self.param.J.T @ dvec

    def _fd_grad(self, z):
        z = np.asarray(z, float)
        h = FD_STEP * np.maximum(1.0, np.abs(z))
        E = np.diag(h)
        vals = self.batch(np.vstack([z + E, z - E]))
        d = z.size
        return (vals[:d] - vals[d:]) / (2.0 * h)


def _descend(obj, z0, max_steps):
    """Projected gradient descent with Armijo backtracking; never worsens ``z0``."""
    param = obj.param
    z = param.project(z0)
    f = obj(z)
    f_start, z_start = f, z.copy()
    span = float(np.max(param.width)) if param.dim else 0.0
    if span == 0.0:
        return z, f
    alpha = None
    for _ in range(max_steps):
        f, g = obj.value_and_grad(z)
        gn = float(np.linalg.norm(g))
        if gn == 0.0 or not np.isfinite(gn):
            break
        step0 = span / gn
        alpha = step0 if alpha is None else min(step0, 4.0 * alpha)
        moved = False
        while alpha * gn > 1e-12 * span:
            z_new = param.project(z - alpha * g)
            f_new = obj(z_new)
            if f_new <= f - 1e-4 * float(g @ (z - z_new)) and f_new < f:
                moved = True
                break
            alpha *= 0.5
        if not moved:
            break
        if np.max(np.abs(z_new - z)) <= 1e-14 * span:
            z, f = z_new, f_new
            break
        z, f = z_new, f_new
    if f > f_start:
        return z_start, f_start
    return z, f


def sensitivity_refine(cand, omega, start, max_steps=100):
    """Local descent from ``start = (A, B)``; returns ``((A, B), value)``."""
    param = omega.box_param()
    obj = _Objective(cand, param)
    if param.dim == 0:
        A, B = param.decode(np.empty(0))
        return (A, B), obj(np.empty(0))
    z, f = _descend(obj, omega.encode(*start), max_steps)
    return param.decode(z), f


def global_minimize(cand, omega, budget, threshold, lipschitz=None, polish_steps=100):
    """DIRECT search over ``omega`` with early exit below ``threshold``.

    ``lipschitz`` is the constant w.r.t. ``(A, B)`` (defaults to
    ``max(1, ||K||) * ||P||``); it sets the constraint penalty weight and the
    reported residual ``gap``, the bound on how far the true minimum can sit
    below the returned value.
    """
    param = omega.box_param()
    obj = _Objective(cand, param)
    if lipschitz is None:
        lipschitz = max(1.0, op_norm(cand.K)) * op_norm(cand.P)
    if param.dim == 0:
        A, B = param.decode(np.empty(0))
        val = obj(np.empty(0))
        return VerifierResult(val, (A, B), GLOBAL, 1, val >= threshold, 0.0, np.empty(0))

    ell_z = lipschitz * param.jacobian_norm
    lo, width = param.lo, param.width
    rho = PENALTY_FACTOR * ell_z / param.constraint_grad_scale

    def f_unit(U):
        return obj.batch(lo + U * width)

    constraint = None
    if param.kind != "box":
        def constraint(U):
            return param.constraint_batch(lo + U * width)

    res = direct_minimize(f_unit, param.dim, budget, constraint=constraint, rho=rho,
                          stop_below=threshold, jones_eps=JONES_EPS, widths=width)
    if res.x is None:
        # nothing feasible sampled; fall back to the set's representative point
        z_best = omega.encode(*omega.default_sample())
        f_best = obj(z_best)
    else:
        z_best, f_best = lo + res.x * width, res.fun
    z_best, f_best = _descend(obj, z_best, polish_steps)
    certified = (not res.stopped_early) and f_best >= threshold
    gap = ell_z * res.max_half_diag
    A, B = param.decode(z_best)
    return VerifierResult(f_best, (A, B), GLOBAL, obj.calls, certified, gap, z_best)


def verify(cand, spec, rng=None):
    """Up to ``spec.n_t`` local attempts from sampled starts, then the global search."""
    rng = np.random.default_rng(spec.seed) if rng is None else rng
    omega = spec.omega
    param = omega.box_param()
    threshold = spec.threshold
    lip = lipschitz_budget(cand, spec.eps, spec.eta)
    evals = 0
    if param.dim > 0:
        for _ in range(int(spec.n_t)):
            obj = _Objective(cand, param)
            z0 = omega.encode(*omega.sample(rng))
            z, f = _descend(obj, z0, spec.sens_max_steps)
            evals += obj.calls
            if f < threshold:
                A, B = param.decode(z)
                return VerifierResult(f, (A, B), SENSITIVITY, evals, False, float("inf"), z)
    res = global_minimize(cand, omega, spec.budget(), threshold, lipschitz=lip.ell_ab,
                          polish_steps=spec.sens_max_steps)
    res.evaluations += evals
    return res
