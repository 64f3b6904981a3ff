import numpy as np
import pytest

from cegis_clf.io import bundled_problem, load_candidate, load_problem

A_LO = np.array([[-0.6685, -0.8709, -0.2028, -1.5547],
                 [1.1457, -0.5898, 0.5688, 0.8496],
                 [-0.7812, -0.5754, -0.8774, -0.2501],
                 [-1.1429, 0.1730, 0.7763, 0.1618]])
A_HI = np.array([[-0.6295, -0.8202, -0.1910, -1.4641],
                 [1.2166, -0.5555, 0.6040, 0.9022],
                 [-0.7357, -0.5419, -0.8263, -0.2355],
                 [-1.0763, 0.1837, 0.8243, 0.1718]])
B_4 = np.array([[0.0], [0.0], [0.0], [1.0]])
A_CENTROID = np.array([[0.6458, 0.3852], [-1.4651, 1.1183]])


def random_sym(rng, n, scale=1.0):
    M = rng.standard_normal((n, n)) * scale
    return 0.5 * (M + M.T)


def random_spd(rng, n, lo=0.5, hi=3.0):
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return Q @ np.diag(rng.uniform(lo, hi, n)) @ Q.T


def inertia_below(M, sigma):
    """Number of eigenvalues of symmetric M below sigma (LDL^T pivots, Sylvester)."""
    S = np.array(M, dtype=float) - sigma * np.eye(M.shape[0])
    n = S.shape[0]
    count = 0
    for k in range(n):
        piv = S[k, k]
        if piv == 0.0:
            piv = 1e-300
        if piv < 0:
            count += 1
        if k + 1 < n:
            col = S[k + 1:, k] / piv
            S[k + 1:, k + 1:] -= np.outer(col, S[k, k + 1:])
    return count


def bisect_lambda_min(M, tol=1e-13):
    """Smallest eigenvalue by bisection on the inertia count."""
    R = float(np.sum(np.abs(M))) + 1.0
    lo, hi = -R, R
    while hi - lo > tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        if inertia_below(M, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@pytest.fixture(scope="session")
def va_spec():
    return load_problem(bundled_problem("polytopic_4x4"))


@pytest.fixture(scope="session")
def vb_spec():
    return load_problem(bundled_problem("spherical_2x2"))


@pytest.fixture(scope="session")
def va_reference():
    return load_candidate(bundled_problem("polytopic_4x4_reference_candidate"))


@pytest.fixture(scope="session")
def vb_reference():
    return load_candidate(bundled_problem("spherical_2x2_reference_candidate"))


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
