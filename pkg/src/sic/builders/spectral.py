"""Eigenvalue (scree) curves for dimension reduction."""

import numpy as np

from ..core import ErrorCurve
from ..errors import CurveError, NumericalError

_SYM_TOL = 1e-10

# covariance of the five-dimensional dimension-reduction demonstration
PCA_COVARIANCE = np.array(
    [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 2.0, 0.7, 0.0],
        [0.0, 0.0, 0.7, 2.0, 0.7],
        [0.0, 0.0, 0.0, 0.7, 2.0],
    ]
)
# reference curve: trace and eigenvalues of a 10**4-sample estimate of PCA_COVARIANCE
PCA_PRINTED_CURVE = (8.0, 3.00, 2.01, 1.01, 1.00, 0.98)


def sym_eigen(matrix):
    """Eigenvalues in decreasing order and matching orthonormal eigenvectors."""
    S = np.array(matrix, dtype=np.float64)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] == 0:
        raise CurveError(f"expected a square matrix, got shape {S.shape}")
    if not np.all(np.isfinite(S)):
        raise CurveError("matrix contains non-finite entries")
    scale = max(float(np.max(np.abs(S))), 1.0)
    if np.max(np.abs(S - S.T)) > _SYM_TOL * scale:
        raise NumericalError("matrix is not symmetric")
    vals, vecs = np.linalg.eigh(0.5 * (S + S.T))
    order = np.argsort(vals)[::-1]
    return vals[order], vecs[:, order]


def sample_covariance(data):
    X = np.asarray(data, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise CurveError("need an (n, d) data matrix with n >= 2")
    return np.cov(X, rowvar=False).reshape(X.shape[1], X.shape[1])


def eigen_curve(matrix, from_data: bool = False) -> ErrorCurve:
    """``V(0) = trace``, ``V(k) = k``-th largest eigenvalue.

    With ``from_data`` the input is an ``(n, d)`` sample whose covariance
    is formed first.
    """
    S = sample_covariance(matrix) if from_data else np.asarray(matrix, dtype=np.float64)
    vals, _ = sym_eigen(S)
    tol = S.shape[0] * np.finfo(np.float64).eps * max(float(np.max(np.abs(vals))), 1.0) * 16
    if vals[-1] < -tol:
        raise NumericalError(f"matrix is not positive semi-definite (eigenvalue {vals[-1]:.3g})")
    vals = np.maximum(vals, 0.0)
    return ErrorCurve(np.concatenate([[np.trace(S)], vals]))


def pca_sample(n=10_000, seed=0, covariance=PCA_COVARIANCE):
    rng = np.random.default_rng(seed)
    L = np.linalg.cholesky(covariance)
    return rng.standard_normal((n, covariance.shape[0])) @ L.T
