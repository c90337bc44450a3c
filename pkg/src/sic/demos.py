"""Canned scenarios: ideal piecewise curves and the three synthetic experiments."""

from dataclasses import dataclass
from typing import Callable, Optional

from .builders.clustering import five_gaussians, kmeans_variance_curve
from .builders.ideal import PiecewiseLinearSpec, piecewise_linear_curve
from .builders.regression import polynomial_data, polynomial_nll_curve
from .builders.spectral import PCA_PRINTED_CURVE
from .core import ErrorCurve


@dataclass(frozen=True)
class Demo:
    description: str
    expected: str
    build: Callable[..., ErrorCurve]
    n_data: Optional[int] = None
    index_label: str = "k"


def _ideal(breakpoints, values):
    return lambda **_: piecewise_linear_curve(PiecewiseLinearSpec(breakpoints, values))


def _clustering(fast=False, seed=0, **_):
    return kmeans_variance_curve(five_gaussians(seed), 49, restarts=20 if fast else 200, seed=seed)


def _poly(seed=0, **_):
    x, y = polynomial_data(seed=seed)
    return polynomial_nll_curve(x, y, 15)


DEMOS = {
    "i1": Demo("constant curve, K=50", "DEGENERATE, k_E = 0", _ideal((0, 50), (10.0, 10.0))),
    "i2": Demo("straight line from (0, 10) to (50, 0)", "single weight w_50 = 1, k_E = 50", _ideal((0, 50), (10.0, 0.0))),
    "i3-convex": Demo(
        "two pieces, slopes -1.8 then -0.01, break at k=5",
        "E = {5, 50}, w_5 = 1 - 0.01/1.8, k_E = 5",
        _ideal((0, 5, 50), (10.0, 1.0, 0.55)),
    ),
    "i3-concave": Demo(
        "two pieces, slopes -0.1 then -19/90, concave, break at k=5",
        "single weight w_50 = 1, k_E = 50",
        _ideal((0, 5, 50), (10.0, 9.5, 0.0)),
    ),
    "i4": Demo(
        "four convex pieces with breaks at k=5, 15, 30",
        "E = {5, 15, 30, 50}; k_E = 15 at 0.9, 30 at 0.95",
        _ideal((0, 5, 15, 30, 50), (10.0, 4.0, 2.0, 1.0, 0.5)),
    ),
    "clustering": Demo(
        "log mean within-cluster variance, 5 Gaussian blobs, 1..50 clusters",
        "k_E = 4, i.e. 5 clusters, at both levels",
        _clustering,
        index_label="k (clusters = k + 1)",
    ),
    "pca": Demo(
        "trace followed by decreasing covariance eigenvalues",
        "k_E = 3 at both levels; AED picks k = 1",
        lambda **_: ErrorCurve(PCA_PRINTED_CURVE),
    ),
    "poly": Demo(
        "-2 max log-likelihood of polynomial fits, N=100, true order 4, K=15",
        "k_E = 4 at both levels; BIC picks 4",
        _poly,
        n_data=100,
        index_label="k (polynomial order)",
    ),
}
