"""Convex-combination membership by linear programming."""

import numpy as np
from scipy.optimize import linprog


def convex_weights(points, p):
    """Best convex weights ``w`` for ``p ~ sum_k w_k points[k]``.

    Minimizes the l1 residual over the probability simplex and returns
    ``(w, residual)`` with ``residual`` the max-abs error of the recombination.
    """
    points = np.asarray(points, dtype=float)
    p = np.asarray(p, dtype=float).ravel()
    k, d = points.shape
    if k == 1:
        return np.ones(1), float(np.max(np.abs(points[0] - p), initial=0.0))
    # variables: w (k), s_plus (d), s_minus (d)
    c = np.concatenate([np.zeros(k), np.ones(2 * d)])
    A_eq = np.zeros((d + 1, k + 2 * d))
    A_eq[:d, :k] = points.T
    A_eq[:d, k:k + d] = -np.eye(d)
    A_eq[:d, k + d:] = np.eye(d)
    A_eq[d, :k] = 1.0
    b_eq = np.concatenate([p, [1.0]])
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if res.status != 0:
        # always feasible in exact arithmetic; treat solver failure as "not inside"
        return None, float("inf")
    w = np.clip(res.x[:k], 0.0, None)
    w = w / w.sum()
    resid = float(np.max(np.abs(points.T @ w - p), initial=0.0))
    return w, resid


def in_convex_hull(points, p, tol):
    _, resid = convex_weights(points, p)
    return resid <= tol
