"""DIRECT (DIviding RECTangles) global minimization on the unit cube.

Jones-style DIRECT: every hyperrectangle is stored by its center and integer
levels (side length ``3**-level`` per coordinate). Each iteration picks the
potentially optimal rectangles from the lower-right convex hull of the
(half-diagonal, value) cloud, then trisects them along their longest sides in
order of the best sampled value.

A single inequality ``g(x) <= 0`` is handled by assigning infeasible centers the
value ``max feasible value seen + rho * g``. All new centers of an iteration are
evaluated as one batch and the penalty uses the batch-complete maximum, so the
partitioning does not depend on evaluation order inside a batch.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass
class DirectResult:
    x: Optional[np.ndarray]
    fun: float
    n_evals: int
    n_iters: int
    stopped_early: bool
    max_half_diag: float


def _half_diag(levels, widths):
    side = 3.0 ** (-levels) * widths
    return 0.5 * np.sqrt(np.sum(side * side, axis=-1))


def _potentially_optimal(d, f, jones_eps):
    """Indices of potentially optimal rectangles (one per distinct size)."""
    key = np.round(d, 12)
    order = np.lexsort((np.arange(d.size), f, key))
    sk = key[order]
    first = np.ones(order.size, dtype=bool)
    first[1:] = sk[1:] != sk[:-1]
    cand = order[first]                      # min-f representative per size, sizes ascending
    cd, cf = d[cand], f[cand]
    fmin = cf.min()
    start = np.flatnonzero(cf == fmin)[-1]   # ties go to the largest rectangle
    cand, cd, cf = cand[start:], cd[start:], cf[start:]

    hull = []
    for k in range(cand.size):
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (cd[a] - cd[o]) * (cf[k] - cf[o]) - (cf[a] - cf[o]) * (cd[k] - cd[o])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(k)

    target = fmin - jones_eps * abs(fmin)
    chosen = []
    for pos, k in enumerate(hull):
        if pos == len(hull) - 1:
            chosen.append(cand[k])
            continue
        nxt = hull[pos + 1]
        slope = (cf[nxt] - cf[k]) / (cd[nxt] - cd[k])
        if cf[k] - slope * cd[k] <= target + 1e-15 * abs(target):
            chosen.append(cand[k])
    return chosen


def direct_minimize(func, dim, budget, constraint=None, rho=1.0,
                    stop_below=-np.inf, jones_eps=1e-4, widths=None):
    """Minimize ``func`` over ``[0, 1]**dim`` with at most ``budget`` evaluations.

    ``func`` and ``constraint`` take an ``(N, dim)`` array of points and return
    ``(N,)`` arrays. The search stops early once a feasible value below
    ``stop_below`` has been seen. ``widths`` rescales the reported
    ``max_half_diag`` to problem units.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    budget = max(int(budget), 1)
    widths = np.ones(dim) if widths is None else np.asarray(widths, dtype=float)
    cap = budget + 2 * dim
    C = np.empty((cap, dim))
    L = np.zeros((cap, dim), dtype=np.int64)
    F = np.empty(cap)
    D = np.empty(cap)

    best_x, best_f = None, np.inf
    fmax_feas = -np.inf
    fmax_any = -np.inf

    def evaluate(X):
        nonlocal best_x, best_f, fmax_feas, fmax_any
        raw = np.asarray(func(X), dtype=float)
        g = np.asarray(constraint(X), dtype=float) if constraint is not None else np.full(len(X), -1.0)
        feas = g <= 0
        fmax_any = max(fmax_any, float(raw.max()))
        if feas.any():
            fmax_feas = max(fmax_feas, float(raw[feas].max()))
            j = np.flatnonzero(feas)[np.argmin(raw[feas])]
            if raw[j] < best_f:
                best_f, best_x = float(raw[j]), X[j].copy()
        ceiling = fmax_feas if np.isfinite(fmax_feas) else fmax_any
        return np.where(feas, raw, ceiling + rho * np.maximum(g, 0.0))

    C[0] = 0.5
    F[0] = evaluate(C[:1])[0]
    D[0] = _half_diag(L[0], np.ones(dim))
    N = 1
    n_iters = 0
    stopped = best_f < stop_below

    while not stopped and N < budget:
        n_iters += 1
        chosen = _potentially_optimal(D[:N], F[:N], jones_eps)
        chosen.sort(key=lambda r: (-D[r], r))
        plan, cost = [], 0
        for r in chosen:
            lmin = L[r].min()
            dims = np.flatnonzero(L[r] == lmin)
            if N + cost + 2 * dims.size > budget:
                break
            plan.append((r, dims, 3.0 ** (-(lmin + 1))))
            cost += 2 * dims.size
        if not plan:
            break

        pts = []
        for r, dims, delta in plan:
            for i in dims:
                e = np.zeros(dim)
                e[i] = delta
                pts.append(C[r] + e)
                pts.append(C[r] - e)
        vals = evaluate(np.array(pts))

        k = 0
        for r, dims, delta in plan:
            nd = dims.size
            v = vals[k:k + 2 * nd].reshape(nd, 2)
            p = np.array(pts[k:k + 2 * nd]).reshape(nd, 2, dim)
            k += 2 * nd
            order = np.argsort(v.min(axis=1), kind="stable")
            lev = L[r].copy()
            for j in order:
                lev[dims[j]] += 1
                for s in range(2):
                    C[N] = p[j, s]
                    L[N] = lev
                    F[N] = v[j, s]
                    D[N] = _half_diag(lev, np.ones(dim))
                    N += 1
            L[r] = lev
            D[r] = _half_diag(lev, np.ones(dim))
        if best_f < stop_below:
            stopped = True

    max_hd = float(np.max(_half_diag(L[:N], widths)))
    return DirectResult(best_x, best_f, N, n_iters, stopped, max_hd)
