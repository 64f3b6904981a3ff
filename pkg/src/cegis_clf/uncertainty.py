"""Models of the compact uncertainty set of ``(A, B)`` pairs.

Three variants are supported:

* :class:`IntervalAB` -- independent interval bounds on every entry of A and B.
* :class:`EllipsoidA` -- ``{A : (vec(A) - c)^T Q (vec(A) - c) <= 1}`` with B fixed.
  ``vec`` stacks columns (Fortran order).
* :class:`PolytopeVerts` -- the convex hull of an explicit list of pairs.

Each variant exposes a :class:`BoxParam`, an affine map from a search box to
``(A, B)`` pairs that the global optimizer in :mod:`cegis_clf.verifier` works on.
Pairs are flattened internally as ``concat(A.ravel(), B.ravel())`` (row-major).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._lp import convex_weights
from .errors import DimensionError, InvalidMatrix, TooManyVertices
from .spectral import as_matrix, sym

MAX_VERTEX_BITS = 40


def pair_vec(A, B):
    return np.concatenate([np.asarray(A, float).ravel(), np.asarray(B, float).ravel()])


def split_vec(v, n, m):
    v = np.asarray(v, dtype=float)
    A = v[..., : n * n].reshape(v.shape[:-1] + (n, n))
    B = v[..., n * n:].reshape(v.shape[:-1] + (n, m))
    return A, B


def _check_pair(A, B, n, m):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B") if np.size(B) else np.zeros((n, m))
    if A.shape != (n, n) or B.shape != (n, m):
        raise DimensionError(f"expected A {n}x{n} and B {n}x{m}, got {A.shape} and {B.shape}")
    return A, B


def _rng(seed):
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class BoxParam:
    """Affine search-space adapter: ``vec(A, B) = offset + J @ z`` for ``z`` in ``[lo, hi]``.

    ``kind`` decides the extra constraint ``g(z) <= 0``:
    ``"box"`` has none (``g = -1``), ``"ellipsoid"`` uses the quadratic form and
    ``"simplex"`` requires ``sum(z) <= 1``.
    """

    n: int
    m: int
    lo: np.ndarray
    hi: np.ndarray
    offset: np.ndarray
    J: np.ndarray
    kind: str = "box"
    center: Optional[np.ndarray] = None
    Q: Optional[np.ndarray] = None

    @property
    def dim(self):
        return self.lo.shape[0]

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def jacobian_norm(self):
        """Operator norm of ``J``; turns pair-space Lipschitz constants into z-space ones."""
        if self.dim == 0:
            return 0.0
        return float(np.linalg.norm(self.J, 2))

    @property
    def constraint_grad_scale(self):
        """Lower bound on ``||grad g||`` near the constraint boundary."""
        if self.kind == "ellipsoid":
            return 2.0 * float(np.sqrt(np.linalg.eigvalsh(self.Q)[0]))
        if self.kind == "simplex":
            return float(np.sqrt(max(self.dim, 1)))
        return 1.0

    def _rows(self, Z):
        Z = np.asarray(Z, dtype=float)
        if self.dim == 0:
            return Z.reshape(Z.shape[0] if Z.ndim == 2 else 1, 0)
        return Z.reshape(-1, self.dim)

    def decode(self, z):
        z = np.asarray(z, dtype=float).reshape(self.dim)
        return split_vec(self.offset + self.J @ z, self.n, self.m)

    def decode_batch(self, Z):
        Z = self._rows(Z)
        return split_vec(self.offset[None, :] + Z @ self.J.T, self.n, self.m)

    def constraint(self, z):
        return float(self.constraint_batch(np.asarray(z, float).reshape(1, -1))[0])

    def constraint_batch(self, Z):
        Z = self._rows(Z)
        if self.kind == "ellipsoid":
            D = Z - self.center
            return np.einsum("ij,jk,ik->i", D, self.Q, D) - 1.0
        if self.kind == "simplex":
            return Z.sum(axis=1) - 1.0
        return -np.ones(Z.shape[0])

    def project(self, z):
        """Euclidean projection onto the feasible region (radial for ellipsoids)."""
        z = np.clip(np.asarray(z, dtype=float).reshape(self.dim), self.lo, self.hi)
        if self.kind == "ellipsoid":
            g = self.constraint(z)
            if g > 0:
                z = self.center + (z - self.center) / np.sqrt(g + 1.0)
        elif self.kind == "simplex" and z.sum() > 1.0:
            z = _project_simplex(z)
        return z

    def inside(self, z, tol=1e-12):
        z = np.asarray(z, dtype=float).reshape(self.dim)
        in_box = np.all(z >= self.lo - tol) and np.all(z <= self.hi + tol)
        return bool(in_box and self.constraint(z) <= tol)


def _project_simplex(v):
    """Projection onto ``{w >= 0, sum(w) = 1}`` (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


class IntervalAB:
    """Entrywise interval bounds ``A_lo <= A <= A_hi``, ``B_lo <= B <= B_hi``.

    A fixed B is expressed with ``B_lo == B_hi`` (or by passing only ``B_lo``).
    """

    kind = "interval"

    def __init__(self, A_lo, A_hi, B_lo, B_hi=None):
        self.A_lo = as_matrix(A_lo, "A_lo")
        self.A_hi = as_matrix(A_hi, "A_hi")
        n = self.A_lo.shape[0]
        if self.A_lo.shape != (n, n) or self.A_hi.shape != (n, n):
            raise DimensionError("A bounds must be square and of equal shape")
        self.B_lo = as_matrix(B_lo, "B_lo")
        self.B_hi = self.B_lo.copy() if B_hi is None else as_matrix(B_hi, "B_hi")
        if self.B_lo.shape[0] != n or self.B_lo.shape != self.B_hi.shape:
            raise DimensionError("B bounds must be n x m and of equal shape")
        if np.any(self.A_lo > self.A_hi) or np.any(self.B_lo > self.B_hi):
            raise InvalidMatrix("interval bounds must satisfy lo <= hi entrywise")
        self.n, self.m = n, self.B_lo.shape[1]
        self._lo = pair_vec(self.A_lo, self.B_lo)
        self._hi = pair_vec(self.A_hi, self.B_hi)
        self.uncertain = np.flatnonzero(self._hi > self._lo)

    @property
    def q(self):
        return int(self.uncertain.size)

    def contains(self, A, B, tol=1e-9):
        A, B = _check_pair(A, B, self.n, self.m)
        v = pair_vec(A, B)
        return bool(np.all(v >= self._lo - tol) and np.all(v <= self._hi + tol))

    def box_param(self):
        offset = self._lo.copy()
        offset[self.uncertain] = 0.0
        J = np.zeros((offset.size, self.q))
        J[self.uncertain, np.arange(self.q)] = 1.0
        return BoxParam(self.n, self.m, self._lo[self.uncertain].copy(),
                        self._hi[self.uncertain].copy(), offset, J)

    def encode(self, A, B):
        return np.clip(pair_vec(A, B)[self.uncertain], self._lo[self.uncertain], self._hi[self.uncertain])

    def vertex_stream(self):
        """Yield all ``2**q`` vertex pairs in Gray-code order.

        Consecutive vertices differ in exactly one entry, so each step costs a
        single entry update plus the copy handed to the caller.
        """
        q = self.q
        if q > MAX_VERTEX_BITS:
            raise TooManyVertices(f"{q} uncertain entries gives 2**{q} vertices")
        v = self._lo.copy()
        lo, hi = self._lo, self._hi
        yield split_vec(v.copy(), self.n, self.m)
        for k in range(1, 2**q):
            bit = (k & -k).bit_length() - 1
            idx = self.uncertain[bit]
            v[idx] = hi[idx] if v[idx] == lo[idx] else lo[idx]
            yield split_vec(v.copy(), self.n, self.m)

    def vertex_chunks(self, chunk=8192):
        """Vectorized Gray-code enumeration: stacks of ``(A, B)`` vertices."""
        q = self.q
        if q > MAX_VERTEX_BITS:
            raise TooManyVertices(f"{q} uncertain entries gives 2**{q} vertices")
        total = 2**q
        lo_u = self._lo[self.uncertain]
        span = (self._hi - self._lo)[self.uncertain]
        shifts = np.arange(q, dtype=np.int64)
        for start in range(0, total, chunk):
            k = np.arange(start, min(start + chunk, total), dtype=np.int64)
            gray = k ^ (k >> 1)
            bits = ((gray[:, None] >> shifts[None, :]) & 1).astype(float)
            V = np.repeat(self._lo[None, :], k.size, axis=0)
            V[:, self.uncertain] = lo_u + bits * span
            yield split_vec(V, self.n, self.m)

    def sample(self, seed=None):
        A, B = self.sample_batch(seed, 1)
        return A[0], B[0]

    def sample_batch(self, seed, size):
        rng = _rng(seed)
        V = np.repeat(self._lo[None, :], size, axis=0)
        u = rng.random((size, self.q))
        V[:, self.uncertain] = self._lo[self.uncertain] + u * (self._hi - self._lo)[self.uncertain]
        return split_vec(V, self.n, self.m)

    def default_sample(self):
        return split_vec(0.5 * (self._lo + self._hi), self.n, self.m)

    def scale(self):
        return max(1.0, float(np.max(np.abs(np.concatenate([self._lo, self._hi])))))


class EllipsoidA:
    """``{A : (vec(A) - c)^T Q (vec(A) - c) <= 1}`` with a fixed input matrix."""

    kind = "ellipsoid"

    def __init__(self, c, Q, B):
        c = np.asarray(c, dtype=float).ravel()
        n = int(round(np.sqrt(c.size)))
        if n * n != c.size:
            raise DimensionError(f"c must have n^2 entries, got {c.size}")
        Q = sym(Q, "Q")
        if Q.shape != (c.size, c.size):
            raise DimensionError(f"Q must be {c.size}x{c.size}, got {Q.shape}")
        if np.linalg.eigvalsh(Q)[0] <= 0:
            raise InvalidMatrix("Q must be positive definite")
        if not np.all(np.isfinite(c)):
            raise InvalidMatrix("c has non-finite entries")
        B = as_matrix(B, "B")
        if B.shape[0] != n:
            raise DimensionError(f"B must have {n} rows")
        self.c, self.Q, self.B = c, Q, B
        self.n, self.m = n, B.shape[1]
        self._L = np.linalg.cholesky(Q)

    @classmethod
    def from_center(cls, A_center, Q, B):
        return cls(np.asarray(A_center, dtype=float).ravel(order="F"), Q, B)

    @property
    def A_center(self):
        return self.c.reshape(self.n, self.n, order="F")

    def form(self, A):
        d = np.asarray(A, dtype=float).ravel(order="F") - self.c
        return float(d @ self.Q @ d)

    def contains(self, A, B, tol=1e-9):
        A, B = _check_pair(A, B, self.n, self.m)
        if np.max(np.abs(B - self.B), initial=0.0) > tol:
            return False
        return self.form(A) - 1.0 <= tol

    def box_param(self):
        n2 = self.n * self.n
        half = np.sqrt(np.diag(np.linalg.inv(self.Q)))
        # z is vec(A) in column order; J reorders it into the row-major pair vector
        J = np.zeros((n2 + self.n * self.m, n2))
        for col in range(self.n):
            for row in range(self.n):
                J[row * self.n + col, col * self.n + row] = 1.0
        offset = np.concatenate([np.zeros(n2), self.B.ravel()])
        return BoxParam(self.n, self.m, self.c - half, self.c + half, offset, J,
                        kind="ellipsoid", center=self.c.copy(), Q=self.Q.copy())

    def encode(self, A, B):
        return np.asarray(A, dtype=float).ravel(order="F")

    def sample(self, seed=None):
        A, B = self.sample_batch(seed, 1)
        return A[0], B[0]

    def sample_batch(self, seed, size):
        rng = _rng(seed)
        d = self.c.size
        u = rng.standard_normal((size, d))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        u *= rng.random((size, 1)) ** (1.0 / d)
        # (z-c)^T Q (z-c) = |u|^2 when z - c = L^{-T} u
        Z = self.c + np.linalg.solve(self._L.T, u.T).T
        A = Z.reshape(size, self.n, self.n).transpose(0, 2, 1)
        return A.copy(), np.repeat(self.B[None], size, axis=0)

    def default_sample(self):
        return self.A_center.copy(), self.B.copy()

    def scale(self):
        bp = self.box_param()
        return max(1.0, float(np.max(np.abs(np.concatenate([bp.lo, bp.hi, self.B.ravel()])))))


class PolytopeVerts:
    """Convex hull of an explicit, nonempty list of ``(A, B)`` pairs."""

    kind = "polytope"

    def __init__(self, vertices):
        vertices = list(vertices)
        if not vertices:
            raise InvalidMatrix("polytope needs at least one vertex")
        A0 = as_matrix(vertices[0][0], "A")
        n = A0.shape[0]
        m = as_matrix(vertices[0][1], "B").shape[1]
        self.n, self.m = n, m
        self.vertices = [_check_pair(A, B, n, m) for A, B in vertices]
        self._V = np.array([pair_vec(A, B) for A, B in self.vertices])

    def contains(self, A, B, tol=1e-9):
        A, B = _check_pair(A, B, self.n, self.m)
        _, resid = convex_weights(self._V, pair_vec(A, B))
        return resid <= tol

    def box_param(self):
        M = self._V.shape[0]
        J = (self._V[1:] - self._V[0]).T.reshape(self._V.shape[1], M - 1)
        return BoxParam(self.n, self.m, np.zeros(M - 1), np.ones(M - 1),
                        self._V[0].copy(), J, kind="simplex")

    def encode(self, A, B):
        w, _ = convex_weights(self._V, pair_vec(A, B))
        return w[1:]

    def sample(self, seed=None):
        A, B = self.sample_batch(seed, 1)
        return A[0], B[0]

    def sample_batch(self, seed, size):
        rng = _rng(seed)
        w = rng.dirichlet(np.ones(self._V.shape[0]), size=size)
        return split_vec(w @ self._V, self.n, self.m)

    def default_sample(self):
        A, B = self.vertices[0]
        return A.copy(), B.copy()

    def scale(self):
        return max(1.0, float(np.max(np.abs(self._V))))


def contains(omega, A, B, tol=1e-9):
    return omega.contains(A, B, tol)


def box_param(omega):
    return omega.box_param()


def vertex_stream(omega):
    if not isinstance(omega, IntervalAB):
        raise TypeError("vertex_stream needs an IntervalAB set")
    return omega.vertex_stream()


def sample(omega, rng_seed=None):
    return omega.sample(rng_seed)
