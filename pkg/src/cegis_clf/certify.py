"""A-posteriori checks of a candidate, independent of the CEGIS loop.

``certify_vertices`` is exact for interval and explicit-polytope sets: for fixed
``(P, K)`` the matrix ``Xi(A + B K)`` is affine in ``(A, B)`` and ``lambda_min``
is concave, so the minimum over a polytope sits at a vertex.
``certify_sampled`` is a Monte-Carlo check for any set; ``grid_oracle`` is a
brute-force minimizer used to test the verifier.
"""

import itertools

import numpy as np

from .errors import DimensionError, TooManyVertices
from .uncertainty import MAX_VERTEX_BITS, IntervalAB, PolytopeVerts
from .verifier import objective_batch

GRID_MAX_DIM = 4
GRID_MAX_POINTS = 20_000_000


def certify_vertices(cand, omega, tol=1e-7, chunk=8192):
    """Evaluate every vertex; returns ``(passed, worst, (A, B) at worst)``."""
    worst, arg = np.inf, None
    if isinstance(omega, IntervalAB):
        if omega.q > MAX_VERTEX_BITS:
            raise TooManyVertices(f"2**{omega.q} vertices")
        chunks = omega.vertex_chunks(chunk)
    elif isinstance(omega, PolytopeVerts):
        A = np.array([a for a, _ in omega.vertices])
        B = np.array([b for _, b in omega.vertices])
        chunks = [(A, B)]
    else:
        raise TypeError("certify_vertices needs an interval or polytope set")
    for A, B in chunks:
        vals = objective_batch(cand, A, B)
        j = int(np.argmin(vals))
        if vals[j] < worst:
            worst, arg = float(vals[j]), (A[j].copy(), B[j].copy())
    return worst >= -tol, worst, arg


def certify_sampled(cand, omega, n_samples=100_000, seed=0, tol=1e-7, chunk=20_000):
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    worst, arg = np.inf, None
    left = int(n_samples)
    while left > 0:
        k = min(chunk, left)
        A, B = omega.sample_batch(rng, k)
        vals = objective_batch(cand, A, B)
        j = int(np.argmin(vals))
        if vals[j] < worst:
            worst, arg = float(vals[j]), (A[j].copy(), B[j].copy())
        left -= k
    return worst >= -tol, worst, arg


def grid_oracle(cand, omega, resolution):
    """Minimum over a uniform grid on the box parameterization.

    ``resolution`` is the grid step relative to each box side; grid points
    include both ends of every side. Infeasible grid points are skipped.
    Returns ``(min value, (A, B))``.
    """
    param = omega.box_param()
    if param.dim > GRID_MAX_DIM:
        raise DimensionError(f"grid oracle limited to dim <= {GRID_MAX_DIM}, got {param.dim}")
    if param.dim == 0:
        A, B = param.decode(np.empty(0))
        return float(objective_batch(cand, A[None], B[None])[0]), (A, B)
    k = int(round(1.0 / resolution)) + 1
    if k**param.dim > GRID_MAX_POINTS:
        raise DimensionError(f"grid with {k}**{param.dim} points is too large")
    axes = [np.linspace(lo, hi, k) for lo, hi in zip(param.lo, param.hi)]
    best, arg = np.inf, None
    # chunk along the first axis to bound memory
    rest = list(itertools.product(*axes[1:])) if param.dim > 1 else [()]
    rest = np.array(rest, dtype=float).reshape(len(rest), param.dim - 1)
    step = max(1, 200_000 // max(len(rest), 1))
    for i0 in range(0, k, step):
        first = axes[0][i0:i0 + step]
        Z = np.hstack([np.repeat(first, len(rest))[:, None], np.tile(rest, (first.size, 1))])
        if param.kind != "box":
            Z = Z[param.constraint_batch(Z) <= 0]
            if Z.shape[0] == 0:
                continue
        A, B = param.decode_batch(Z)
        vals = objective_batch(cand, A, B)
        j = int(np.argmin(vals))
        if vals[j] < best:
            best, arg = float(vals[j]), (A[j].copy(), B[j].copy())
    return best, arg


AUTO_VERTEX_BITS = 24


def check(cand, omega, tol=1e-7, n_samples=100_000, seed=0):
    """Exhaustive vertex check when affordable, Monte-Carlo sampling otherwise."""
    if isinstance(omega, PolytopeVerts) or (isinstance(omega, IntervalAB) and omega.q <= AUTO_VERTEX_BITS):
        passed, worst, _ = certify_vertices(cand, omega, tol)
        method, count = "vertices", (len(omega.vertices) if isinstance(omega, PolytopeVerts) else 2**omega.q)
    else:
        passed, worst, _ = certify_sampled(cand, omega, n_samples, seed, tol)
        method, count = "sampled", int(n_samples)
    return {"method": method, "passed": bool(passed), "worst": float(worst), "tol": tol, "count": count}
