"""Problem definition and the quadratic-Lyapunov / linear-feedback parametrization."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import ConfigError, DimensionError
from .spectral import as_matrix, sym

DEFAULT_EPS = 1e-3
DEFAULT_ETA = 1e3
DEFAULT_W_MAX = 1e3
DEFAULT_N_T = 3
DEFAULT_MAX_ITERS = 100
DEFAULT_SENS_STEPS = 100


@dataclass(frozen=True)
class Candidate:
    """A tentative pair ``V(x) = x^T P x`` and ``u = K x``."""

    P: np.ndarray
    K: np.ndarray

    def __post_init__(self):
        P = sym(self.P, "P")
        K = as_matrix(self.K, "K")
        if K.shape[1] != P.shape[0]:
            raise DimensionError(f"K must have {P.shape[0]} columns, got {K.shape}")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "K", K)

    @property
    def n(self):
        return self.P.shape[0]

    @property
    def m(self):
        return self.K.shape[0]


@dataclass
class ProblemSpec:
    """Everything a synthesis run needs.

    ``accept_threshold=None`` resolves to ``eps / 2``. ``verifier_budget=None``
    resolves to ``2000 * dim`` DIRECT evaluations (capped at 10**6), where
    ``dim`` is the dimension of the uncertainty parameterization.
    """

    omega: object
    eps: float = DEFAULT_EPS
    eta: float = DEFAULT_ETA
    w_max: float = DEFAULT_W_MAX
    initial_sample: Optional[Tuple[np.ndarray, np.ndarray]] = None
    accept_threshold: Optional[float] = None
    max_iters: int = DEFAULT_MAX_ITERS
    verifier_budget: Optional[int] = None
    n_t: int = DEFAULT_N_T
    seed: int = 0
    sens_max_steps: int = DEFAULT_SENS_STEPS
    vertex_filter: bool = True
    extras: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.omega.n

    @property
    def m(self):
        return self.omega.m

    @property
    def threshold(self):
        if self.accept_threshold is None:
            return 0.5 * self.eps
        return float(self.accept_threshold)

    def budget(self):
        if self.verifier_budget is not None:
            return int(self.verifier_budget)
        dim = self.omega.box_param().dim
        return int(min(2000 * max(dim, 1), 10**6))

    def initial(self):
        if self.initial_sample is not None:
            A, B = self.initial_sample
            return as_matrix(A), as_matrix(B)
        return self.omega.default_sample()

    def validate(self):
        if not np.isfinite(self.eps) or self.eps <= 0:
            raise ConfigError(f"eps must be > 0, got {self.eps}")
        if not np.isfinite(self.eta) or self.eta < self.eps:
            raise ConfigError(f"eta must be >= eps, got eta={self.eta}, eps={self.eps}")
        if not np.isfinite(self.w_max) or self.w_max <= 0:
            raise ConfigError(f"w_max must be > 0, got {self.w_max}")
        if self.accept_threshold is not None:
            thr = float(self.accept_threshold)
            if not (0.0 <= thr <= 0.5 * self.eps):
                raise ConfigError(f"accept_threshold must lie in [0, eps/2], got {thr}")
        if int(self.max_iters) < 1:
            raise ConfigError("max_iters must be a positive integer")
        if int(self.n_t) < 0:
            raise ConfigError("n_t must be non-negative")
        if self.verifier_budget is not None and int(self.verifier_budget) < 1:
            raise ConfigError("verifier_budget must be positive")
        if int(self.seed) < 0:
            raise ConfigError("seed must be an unsigned integer")
        if self.initial_sample is not None:
            A, B = self.initial()
            try:
                inside = self.omega.contains(A, B, 1e-9)
            except DimensionError as exc:
                raise ConfigError(f"initial_sample: {exc}") from exc
            if not inside:
                raise ConfigError("initial_sample is not in the uncertainty set")
        return self


def closed_loop(A, B, K):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    K = as_matrix(K, "K")
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionError(f"A must be square, got {A.shape}")
    if B.shape[0] != n or K.shape != (B.shape[1], n):
        raise DimensionError(f"incompatible shapes A{A.shape} B{B.shape} K{K.shape}")
    return A + B @ K


def lyapunov_decrease(P, A, B, K, x):
    """``V(x+) - V(x)`` for ``V(x) = x^T P x`` under ``x+ = (A + B K) x``."""
    P = sym(P, "P")
    A_cl = closed_loop(A, B, K)
    x = np.asarray(x, dtype=float).ravel()
    if P.shape != A_cl.shape or x.shape[0] != P.shape[0]:
        raise DimensionError("inconsistent dimensions")
    xp = A_cl @ x
    return float(xp @ P @ xp - x @ P @ x)
