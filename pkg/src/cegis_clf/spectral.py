"""Dense symmetric spectral kernels.

Everything here works on small dense numpy arrays (orders up to a few tens).
Eigenvalues come from LAPACK's symmetric driver through ``numpy.linalg.eigvalsh``
(Householder tridiagonalization followed by an implicit QL/QR or divide and
conquer sweep), which is backward stable for these sizes.
"""

import numpy as np

from .errors import DimensionError, InvalidMatrix, NotSPD

DEFAULT_PSD_TOL = 1e-9


def as_matrix(M, name="matrix"):
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.ndim != 2:
        raise InvalidMatrix(f"{name} must be 2-D, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidMatrix(f"{name} has non-finite entries")
    return M


def sym(M, name="matrix"):
    """Return the symmetric part of a square matrix, i.e. ``(M + M.T) / 2``.

    The result is exactly symmetric in floating point, which is what the
    eigensolvers below assume.
    """
    M = as_matrix(M, name)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got {M.shape}")
    return 0.5 * (M + M.T)


def lambda_min(M):
    M = sym(M)
    return float(np.linalg.eigvalsh(M)[0])


def lambda_max(M):
    M = sym(M)
    return float(np.linalg.eigvalsh(M)[-1])


def op_norm(M):
    """Largest singular value (the l2-induced norm)."""
    M = as_matrix(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def xi(P, A_cl):
    """Schur-complement matrix ``[[P, A_cl^T P], [P A_cl, P]]``.

    ``Xi >= 0`` is equivalent to ``A_cl^T P A_cl - P <= 0`` whenever ``P > 0``.
    """
    P = sym(P, "P")
    A_cl = as_matrix(A_cl, "A_cl")
    n = P.shape[0]
    if A_cl.shape != (n, n):
        raise DimensionError(f"A_cl must be {n}x{n}, got {A_cl.shape}")
    lower = P @ A_cl
    out = np.empty((2 * n, 2 * n))
    out[:n, :n] = P
    out[n:, n:] = P
    out[n:, :n] = lower
    out[:n, n:] = lower.T
    return out


def xi_batch(P, A_cl):
    """Stacked version of :func:`xi` for ``A_cl`` of shape ``(N, n, n)``."""
    P = 0.5 * (P + P.T)
    n = P.shape[0]
    N = A_cl.shape[0]
    lower = P @ A_cl
    out = np.empty((N, 2 * n, 2 * n))
    out[:, :n, :n] = P
    out[:, n:, n:] = P
    out[:, n:, :n] = lower
    out[:, :n, n:] = np.swapaxes(lower, 1, 2)
    return out


def lambda_min_batch(M):
    if M.shape[0] == 0:
        return np.empty(0)
    return np.linalg.eigvalsh(M)[:, 0]


def default_psd_tol(M):
    M = np.asarray(M)
    return DEFAULT_PSD_TOL * M.shape[0] * max(1.0, op_norm(M))


def is_psd(M, tol=None):
    """True iff ``lambda_min(M) >= -tol``.

    With ``tol=None`` the tolerance is ``1e-9 * order * max(1, ||M||)``.
    """
    M = sym(M)
    if tol is None:
        tol = default_psd_tol(M)
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return lambda_min(M) >= -tol


def weyl_gap(K, L):
    K = sym(K, "K")
    L = sym(L, "L")
    if K.shape != L.shape:
        raise DimensionError(f"shape mismatch {K.shape} vs {L.shape}")
    return abs(lambda_min(K) - lambda_min(K + L))


def inverse_spd(M):
    """Inverse of a symmetric positive definite matrix via Cholesky."""
    from scipy.linalg import LinAlgError, cho_factor, cho_solve

    M = sym(M)
    n = M.shape[0]
    try:
        c = cho_factor(M, lower=True)
    except LinAlgError as exc:
        raise NotSPD("matrix is not positive definite") from exc
    if lambda_min(M) <= 0.0:
        raise NotSPD("matrix is not positive definite")
    inv = cho_solve(c, np.eye(n))
    return 0.5 * (inv + inv.T)
