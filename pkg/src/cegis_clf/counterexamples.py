"""The growing sample set and its convex-hull vertex filter."""

import numpy as np

from ._lp import in_convex_hull
from .errors import DuplicateCounterexample
from .spectral import as_matrix
from .uncertainty import pair_vec

DEDUP_TOL = 1e-12
HULL_TOL = 1e-9


class CounterexampleSet:
    """Ordered, duplicate-free list of ``(A, B)`` samples.

    ``scale`` sets the magnitude used for the relative duplicate and hull
    tolerances (typically ``omega.scale()``).
    """

    def __init__(self, n, m, scale=1.0, dedup_tol=DEDUP_TOL):
        self.n, self.m = n, m
        self.scale = float(scale)
        self.dedup_tol = dedup_tol
        self.items = []
        self._vecs = []

    @property
    def vec_dim(self):
        return self.n * self.n + self.n * self.m

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def vectors(self):
        return np.array(self._vecs).reshape(len(self._vecs), self.vec_dim)

    def add(self, A, B):
        A = as_matrix(A, "A").copy()
        B = as_matrix(B, "B").reshape(self.n, self.m).copy()
        v = pair_vec(A, B)
        tol = self.dedup_tol * self.scale
        for j, w in enumerate(self._vecs):
            if np.max(np.abs(v - w)) <= tol:
                raise DuplicateCounterexample(f"pair coincides with stored sample #{j}")
        self.items.append((A, B))
        self._vecs.append(v)
        return self

    def hull_indices(self):
        """Indices of samples that are vertices of the convex hull of all samples."""
        k = len(self._vecs)
        if k <= 2:
            return list(range(k))
        V = self.vectors()
        tol = HULL_TOL * self.scale
        keep = []
        for j in range(k):
            others = np.delete(V, j, axis=0)
            if not in_convex_hull(others, V[j], tol):
                keep.append(j)
        return keep

    def hull_vertices(self):
        return [self.items[j] for j in self.hull_indices()]
