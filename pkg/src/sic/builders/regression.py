"""Gaussian profile-likelihood curves for nested linear regressions."""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import solve_triangular

from ..core import ErrorCurve
from ..errors import CurveError, DegenerateFitError, RankDeficientError

_LOG_2PI = float(np.log(2.0 * np.pi))
# residual norms below this fraction of |y| count as an exact fit
_ZERO_RESIDUAL = 1e-12


@dataclass(frozen=True)
class Dataset:
    """Targets plus feature columns ordered by presumed importance."""

    targets: np.ndarray
    features: np.ndarray
    names: Optional[Sequence[str]] = None

    def __post_init__(self):
        y = np.array(self.targets, dtype=np.float64).ravel()
        X = np.array(self.features, dtype=np.float64)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2 or X.shape[0] != y.size:
            raise CurveError(f"features must be an ({y.size}, K) matrix, got shape {X.shape}")
        if not (np.all(np.isfinite(y)) and np.all(np.isfinite(X))):
            raise CurveError("dataset contains non-finite entries")
        object.__setattr__(self, "targets", y)
        object.__setattr__(self, "features", X)

    @property
    def N(self) -> int:
        return self.targets.size

    @property
    def K(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class LinearModelFit:
    coefficients: np.ndarray
    residual_sum_of_squares: float
    n_data: int

    @property
    def sigma2_hat(self) -> float:
        return self.residual_sum_of_squares / self.n_data


def fit_nested(data: Dataset, include_intercept: bool = True, max_k: int = None) -> list:
    """Least-squares fits on the first ``k`` feature columns, ``k = 0..max_k``.

    One Householder QR of the full design serves every ``k``: the leading
    ``k`` columns of ``Q`` and the leading block of ``R`` are the QR factors
    of the nested design. Residuals are formed explicitly from the solved
    coefficients rather than by subtracting projected norms.
    """
    y, X = data.targets, data.features
    max_k = data.K if max_k is None else int(max_k)
    if not 0 <= max_k <= data.K:
        raise CurveError(f"max_k={max_k} outside 0..{data.K}")
    cols = [np.ones(data.N)] if include_intercept else []
    A = np.column_stack(cols + [X[:, :max_k]]) if (cols or max_k) else np.empty((data.N, 0))
    offset = 1 if include_intercept else 0
    if A.shape[1] > data.N:
        k_bad = data.N - offset
        raise CurveError(f"k={k_bad} needs more than N={data.N} observations")

    if A.shape[1]:
        Q, R = np.linalg.qr(A)
        qty = Q.T @ y
        diag = np.abs(np.diag(R))
        scale = np.linalg.norm(A, axis=0)
        scale[scale == 0] = 1.0
        tol = max(data.N, A.shape[1]) * np.finfo(np.float64).eps
        bad = np.flatnonzero(diag / scale <= tol)
        first_bad = int(bad[0]) + 1 - offset if bad.size else max_k + 1
    fits = []
    for k in range(max_k + 1):
        p = k + offset
        if p == 0:
            theta = np.empty(0)
            resid = y
        else:
            if k >= first_bad:
                raise RankDeficientError(first_bad)
            theta = solve_triangular(R[:p, :p], qty[:p], lower=False)
            resid = y - A[:, :p] @ theta
        fits.append(LinearModelFit(theta, float(resid @ resid), data.N))
    return fits


def gaussian_nll_curve(data: Dataset, include_intercept: bool = True, max_k: int = None) -> ErrorCurve:
    """``V(k) = -2 log L_max`` of the Gaussian linear model on ``k`` features.

    With the noise variance profiled out this is
    ``N log(2 pi) + N log(RSS_k / N) + N``. The intercept is not counted
    in ``k``.
    """
    fits = fit_nested(data, include_intercept, max_k)
    N = data.N
    floor = (_ZERO_RESIDUAL * np.linalg.norm(data.targets)) ** 2
    values = np.empty(len(fits))
    for k, fit in enumerate(fits):
        rss = fit.residual_sum_of_squares
        if rss <= floor:
            raise DegenerateFitError(f"zero residual sum of squares at k={k}; the log-likelihood is unbounded")
        values[k] = N * _LOG_2PI + N * np.log(rss / N) + N
    return ErrorCurve(values)


def vandermonde(x, max_order: int, rescale: bool = True) -> np.ndarray:
    """Columns ``x, x**2, ..., x**max_order``.

    With ``rescale`` the powers are taken of ``x`` mapped affinely onto
    ``[-1, 1]``; the nested column spans, and hence every residual, are the
    same as for raw powers, but the matrix is far better conditioned.
    """
    x = np.asarray(x, dtype=np.float64).ravel()
    if rescale:
        lo, hi = x.min(), x.max()
        if hi == lo:
            raise CurveError("x values are all identical")
        x = (2.0 * x - (lo + hi)) / (hi - lo)
    return x[:, None] ** np.arange(1, max_order + 1)[None, :]


def polynomial_nll_curve(x, y, max_order: int) -> ErrorCurve:
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.size != y.size:
        raise CurveError("x and y must have the same length")
    if x.size <= max_order:
        raise CurveError(f"need N > max_order, got N={x.size}, max_order={max_order}")
    return gaussian_nll_curve(Dataset(y, vandermonde(x, max_order)))


# polynomial used in the order-selection demonstration (order 4)
POLY_THETA = (4.05, -2.025, -2.225, 0.1, 0.1)


def polynomial_data(n=100, theta=POLY_THETA, noise_sd=1.0, x_range=(-5.0, 5.0), seed=0):
    """Sample ``y = sum_j theta_j x**j + eps`` at ``n`` uniform inputs."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(x_range[0], x_range[1], size=n)
    y = np.polynomial.polynomial.polyval(x, theta) + noise_sd * rng.standard_normal(n)
    return x, y
