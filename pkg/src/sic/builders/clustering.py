"""Within-cluster variance curves from repeated k-means runs."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import ErrorCurve
from ..errors import CurveError, DegenerateFitError, NumericalError
from ..kernels import kmeanspp_indices, lloyd

# five bidimensional Gaussians used in the clustering demonstration
FIVE_GAUSSIANS = {
    "means": [[3.0, 0.0], [14.0, 5.0], [-5.0, -10.0], [10.0, -10.0], [-5.0, 5.0]],
    "covariances": [
        [[0.3, 0.0], [0.0, 2.0]],
        [[1.5, 0.7], [0.7, 1.5]],
        [[1.5, 0.7], [0.7, 1.5]],
        [[1.5, 0.0], [0.0, 1.5]],
        [[1.0, -0.8], [-0.8, 1.0]],
    ],
    "counts": [500] * 5,
}

VARIANCE_KINDS = ("mean", "sum")
# candidates per greedy seeding step; the common 2 + log(c) still leaves
# about 0.4% of five-cluster runs in a merged-blob local minimum
GREEDY_TRIALS = 8
INIT_SCHEMES = ("random", "k-means++", "greedy-k-means++")


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray
    labels: Optional[np.ndarray] = None

    def __post_init__(self):
        p = np.array(self.points, dtype=np.float64)
        if p.ndim == 1:
            p = p[:, None]
        if p.ndim != 2 or p.shape[0] == 0:
            raise CurveError("a point cloud needs an (N, d) array")
        if not np.all(np.isfinite(p)):
            raise CurveError("point cloud contains non-finite coordinates")
        object.__setattr__(self, "points", p)

    @property
    def N(self) -> int:
        return self.points.shape[0]


def gaussian_mixture_cloud(means, covariances, counts, seed=0) -> PointCloud:
    """Sample ``counts[i]`` points from ``N(means[i], covariances[i])``.

    Each component is drawn as ``mu + z @ L.T`` with ``L`` the Cholesky
    factor, from a single ``numpy.random.default_rng(seed)`` stream.
    """
    means = np.atleast_2d(np.asarray(means, dtype=np.float64))
    covs = np.asarray(covariances, dtype=np.float64)
    if covs.ndim == 2:
        covs = covs[None]
    counts = [int(c) for c in np.atleast_1d(counts)]
    if not (len(means) == len(covs) == len(counts)):
        raise CurveError("means, covariances and counts must have equal length")
    rng = np.random.default_rng(seed)
    chunks, labels = [], []
    for i, (mu, cov, n) in enumerate(zip(means, covs, counts)):
        if not np.allclose(cov, cov.T, atol=1e-12):
            raise NumericalError(f"covariance {i} is not symmetric")
        try:
            L = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError:
            raise NumericalError(f"covariance {i} is not positive definite") from None
        chunks.append(mu + rng.standard_normal((n, mu.size)) @ L.T)
        labels.append(np.full(n, i))
    return PointCloud(np.vstack(chunks), np.concatenate(labels))


def five_gaussians(seed=0, per_component=500) -> PointCloud:
    g = FIVE_GAUSSIANS
    return gaussian_mixture_cloud(g["means"], g["covariances"], [per_component] * 5, seed)


def within_variance(points, labels, centroids, kind="mean") -> float:
    """Sum over clusters of the within-cluster spread.

    ``kind="mean"`` divides each cluster's squared distances by its size;
    ``kind="sum"`` is the plain within-cluster sum of squares.
    """
    sq = ((points - centroids[labels]) ** 2).sum(axis=1)
    per = np.bincount(labels, weights=sq, minlength=centroids.shape[0])
    if kind == "sum":
        return float(per.sum())
    if kind == "mean":
        n = np.bincount(labels, minlength=centroids.shape[0])
        nz = n > 0
        return float((per[nz] / n[nz]).sum())
    raise CurveError(f"unknown variance kind {kind!r}; expected one of {VARIANCE_KINDS}")


def initial_centroids(points, n_clusters, rng, scheme="random", trials=GREEDY_TRIALS):
    """Pick starting centroids among the data points.

    ``"random"`` draws distinct points uniformly; ``"k-means++"`` draws each
    next point with probability proportional to its squared distance to the
    nearest centroid chosen so far. ``"greedy-k-means++"`` draws ``trials``
    such candidates per step and keeps the one that lowers the total
    squared distance most.
    """
    n = points.shape[0]
    if scheme == "random":
        return points[rng.choice(n, size=n_clusters, replace=False)]
    if scheme not in INIT_SCHEMES:
        raise CurveError(f"unknown init scheme {scheme!r}; expected one of {INIT_SCHEMES}")
    if scheme == "k-means++":
        trials = 1
    elif int(trials) < 1:
        raise CurveError("greedy seeding needs at least one trial per step")
    first = int(rng.integers(n))
    uniforms = rng.random((n_clusters - 1, int(trials)))
    return points[kmeanspp_indices(points, first, uniforms)]


def kmeans_variance_curve(
    cloud,
    max_k,
    restarts=200,
    seed=0,
    variance="mean",
    init="greedy-k-means++",
    max_iter=300,
    trials=GREEDY_TRIALS,
) -> ErrorCurve:
    """``V(k) = log(mean over restarts of the total within-cluster variance)``.

    Index ``k`` uses ``k + 1`` clusters. The average is taken over
    ``restarts`` independent Lloyd runs before the log. Every ``k`` draws
    its initializations from its own child stream of ``SeedSequence(seed)``,
    so the curve is reproducible from ``(seed, parameters)``.

    See :func:`within_variance` for ``variance`` and
    :func:`initial_centroids` for ``init`` and ``trials``.
    """
    if not isinstance(cloud, PointCloud):
        cloud = PointCloud(cloud)
    pts = cloud.points
    max_k, restarts = int(max_k), int(restarts)
    if max_k < 0 or restarts < 1:
        raise CurveError("max_k must be >= 0 and restarts >= 1")
    if max_k + 1 > cloud.N:
        raise CurveError(f"{max_k + 1} clusters requested for {cloud.N} points")
    if variance not in VARIANCE_KINDS:
        raise CurveError(f"unknown variance kind {variance!r}; expected one of {VARIANCE_KINDS}")
    if init not in INIT_SCHEMES:
        raise CurveError(f"unknown init scheme {init!r}; expected one of {INIT_SCHEMES}")

    streams = np.random.SeedSequence(seed).spawn(max_k + 1)
    out = np.empty(max_k + 1)
    for k in range(max_k + 1):
        rng = np.random.default_rng(streams[k])
        total = 0.0
        for _ in range(restarts):
            start = initial_centroids(pts, k + 1, rng, init, trials)
            labels, centroids, _ = lloyd(pts, start, max_iter)
            total += within_variance(pts, labels, centroids, variance)
        avg = total / restarts
        if not avg > 0.0:
            raise DegenerateFitError(f"zero within-cluster variance at k={k} ({k + 1} clusters)")
        out[k] = np.log(avg)
    return ErrorCurve(out)
