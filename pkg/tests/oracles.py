"""Independent oracles the tests check the implementation against.

Each oracle deliberately avoids the code path it verifies: the Jacobi
eigensolver checks the LAPACK-backed PCA, the dense grid search checks
the bracketed sup of the likelihood decomposition, the serialized-tree
replay checks forest prediction, and the full distance sort checks the
k-NN neighbor selection.
"""

from __future__ import annotations

import numpy as np


def jacobi_eigh(S: np.ndarray, sweeps: int = 100, tol: float = 1e-12):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Returns (eigenvalues, eigenvectors-as-columns) sorted descending.
    """
    A = np.array(S, dtype=np.float64, copy=True)
    n = A.shape[0]
    V = np.eye(n)
    for _ in range(sweeps):
        off = np.sqrt(np.sum(np.tril(A, -1) ** 2))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(A[p, q]) < 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * A[p, q])
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) \
                    if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                J = np.eye(n)
                J[p, p] = J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                A = J.T @ A @ J
                V = V @ J
    order = np.argsort(np.diag(A))[::-1]
    return np.diag(A)[order], V[:, order]


def rl_grid_search(s: int, f: int, n_points: int = 1_000_001):
    """(epistemic, aleatoric) by brute-force scan of the two suprema."""
    theta = np.linspace(0.0, 1.0, n_points)
    if s + f == 0:
        ell = np.ones_like(theta)
    else:
        theta_hat = s / (s + f)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_ell = np.where(theta > 0, s * np.log(theta), -np.inf if s else 0.0) \
                + np.where(theta < 1, f * np.log1p(-theta), -np.inf if f else 0.0)
            log_norm = (s * np.log(theta_hat) if s else 0.0) \
                + (f * np.log1p(-theta_hat) if f else 0.0)
        ell = np.exp(log_ell - log_norm)
    pi_plus = float(np.max(np.minimum(ell, 2.0 * theta - 1.0)))
    pi_minus = float(np.max(np.minimum(ell, 1.0 - 2.0 * theta)))
    return min(pi_plus, pi_minus), 1.0 - max(pi_plus, pi_minus)


def replay_tree(node: dict, q) -> np.ndarray:
    """Recursive re-evaluation of a serialized decision tree."""
    if node["leaf"]:
        return np.asarray(node["dist"], dtype=np.float64)
    if q[node["feature"]] <= node["threshold"]:
        return replay_tree(node["left"], q)
    return replay_tree(node["right"], q)


def replay_forest(serialized: dict, q) -> np.ndarray:
    members = np.stack([replay_tree(t, q) for t in serialized["trees"]])
    return members.mean(axis=0)


def knn_counts_by_full_sort(points: np.ndarray, labels: np.ndarray, q,
                            k: int, n_classes: int) -> np.ndarray:
    """Neighbor counts via a full sort on (distance, index) pairs."""
    d2 = ((points - np.asarray(q, dtype=np.float64)) ** 2).sum(axis=1)
    order = sorted(range(len(labels)), key=lambda i: (d2[i], i))
    counts = np.zeros(n_classes, dtype=np.int64)
    for i in order[:k]:
        counts[labels[i]] += 1
    return counts


def linearly_separable(points: np.ndarray, targets: np.ndarray) -> bool:
    """Exact LP feasibility of y_i (w.x_i + b) >= 1 via scipy linprog."""
    from scipy.optimize import linprog

    n, d = points.shape
    # variables: w (d), b (1); constraints -y_i (w.x_i + b) <= -1
    A_ub = -(targets[:, None] * np.hstack([points, np.ones((n, 1))]))
    b_ub = -np.ones(n)
    res = linprog(c=np.zeros(d + 1), A_ub=A_ub, b_ub=b_ub,
                  bounds=[(None, None)] * (d + 1), method="highs")
    return bool(res.success)
