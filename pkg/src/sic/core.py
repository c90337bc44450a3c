"""Penalized-cost geometry of an error curve and its weight spectrum.

An error curve ``V(0..K)`` is scored by the linear-penalty cost
``C(k, lam) = V(k) + lam * k``. Sweeping ``lam`` over ``[0, lambda_max]``
splits the slope axis into intervals on which one ``k`` is the minimizer;
the normalized interval lengths form a probability mass over model sizes,
whose support is the set of candidate elbows.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .errors import CurveError

# slopes closer than this many ulps of max|V| are treated as equal
_SLOPE_ULPS = 16.0
# draws per RNG block in the Monte Carlo engine
_MC_BLOCK = 1 << 20
# slack when comparing cumulative weights against a level
_LEVEL_SLACK = 1e-12

DEFAULT_LEVELS = (0.9, 0.95)


@dataclass(frozen=True)
class ErrorCurve:
    """Finite sequence ``V(0), ..., V(K)``; need not be monotone."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size == 0:
            raise CurveError("an error curve needs a non-empty 1-d sequence of values")
        bad = np.flatnonzero(~np.isfinite(v))
        if bad.size:
            raise CurveError(f"non-finite curve value at k={int(bad[0])}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def K(self) -> int:
        return self.values.size - 1

    def __len__(self):
        return self.values.size

    def __getitem__(self, k):
        return self.values[k]

    def is_non_increasing(self) -> bool:
        return bool(np.all(np.diff(self.values) <= 0))


CurveLike = Union[ErrorCurve, Sequence[float], np.ndarray]


def as_curve(curve: CurveLike) -> ErrorCurve:
    return curve if isinstance(curve, ErrorCurve) else ErrorCurve(curve)


@dataclass(frozen=True)
class PenalizedCostPoint:
    k: int
    lam: float
    cost: float


@dataclass(frozen=True)
class IntervalPartition:
    """Lengths ``|S_k|`` of the slope intervals on which ``k`` is optimal.

    ``breakpoints`` are the interior slopes in ``(0, lambda_max)`` where the
    minimizer changes, in decreasing order; ``hull`` lists the lower convex
    hull vertices of ``{(k, V(k))}``.
    """

    measures: np.ndarray
    lambda_max: float
    breakpoints: tuple = ()
    hull: tuple = ()


@dataclass(frozen=True)
class WeightSpectrum:
    weights: np.ndarray
    method: str
    lambda_max: float
    samples: Optional[int] = None
    seed: Optional[int] = None
    degenerate: bool = False
    counts: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def K(self) -> int:
        return self.weights.size - 1


def normalize(curve: CurveLike) -> ErrorCurve:
    """Shift the curve so that its minimum is exactly zero."""
    c = as_curve(curve)
    return ErrorCurve(c.values - c.values.min())


def cost(curve: CurveLike, k: int, lam: float) -> float:
    c = as_curve(curve)
    if not 0 <= k <= c.K:
        raise CurveError(f"k={k} outside 0..{c.K}")
    if lam < 0:
        raise CurveError("penalty slope must be non-negative")
    return float(c.values[k] + lam * k)


def cost_point(curve: CurveLike, k: int, lam: float) -> PenalizedCostPoint:
    return PenalizedCostPoint(k, float(lam), cost(curve, k, lam))


def lambda_max(curve: CurveLike) -> float:
    """Smallest slope at which the empty model ``k = 0`` becomes optimal.

    Exhaustive scan of ``(V(0) - V(k)) / k`` over ``k = 1..K``, floored at 0.
    """
    v = as_curve(curve).values
    if v.size == 1:
        return 0.0
    ks = np.arange(1, v.size, dtype=np.float64)
    return max(0.0, float(np.max((v[0] - v[1:]) / ks)))


def argmin_cost(curve: CurveLike, lam: float) -> int:
    """Minimizer of ``V(k) + lam * k``; ties resolve to the smallest ``k``."""
    if lam < 0:
        raise CurveError("penalty slope must be non-negative")
    v = as_curve(curve).values
    ks = np.arange(v.size, dtype=np.float64)
    return int(np.argmin(v + lam * ks))


def lower_hull(values: np.ndarray, atol: float = 0.0) -> list:
    """Monotone-chain lower convex hull of ``{(k, values[k])}``.

    A point is kept only if the slope into it is smaller than the slope out
    of it by more than ``atol``; collinear and near-collinear points are
    dropped, which is what the smallest-k tie-break implies.
    """
    hull = [0]
    for k in range(1, values.size):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            s_in = (values[b] - values[a]) / (b - a)
            s_out = (values[k] - values[b]) / (k - b)
            if s_in >= s_out - atol:
                hull.pop()
            else:
                break
        hull.append(k)
    return hull


def _slope_tol(v: np.ndarray) -> float:
    return _SLOPE_ULPS * np.finfo(np.float64).eps * float(np.max(np.abs(v)))


def interval_partition_exact(curve: CurveLike) -> IntervalPartition:
    """Exact ``|S_k|`` from the lower convex hull of the curve.

    Hull vertex ``h[j]`` (``j >= 1``) minimizes the cost for slopes between
    minus the slope of its outgoing edge and minus the slope of its incoming
    edge, clipped to ``[0, lambda_max]``.
    """
    v = as_curve(curve).values
    lmax = lambda_max(v)
    measures = np.zeros(v.size)
    if v.size == 1:
        return IntervalPartition(measures, lmax, (), (0,))
    hull = lower_hull(v, _slope_tol(v))
    upper = lmax
    breakpoints = []
    for j in range(1, len(hull)):
        if j + 1 < len(hull):
            a, b = hull[j], hull[j + 1]
            lower = max(0.0, -(v[b] - v[a]) / (b - a))
        else:
            lower = 0.0
        lower = min(lower, upper)
        measures[hull[j]] = upper - lower
        if 0.0 < lower < lmax:
            breakpoints.append(float(lower))
        upper = lower
    return IntervalPartition(measures, lmax, tuple(breakpoints), tuple(hull))


def _degenerate(K: int, method: str, samples=None, seed=None) -> WeightSpectrum:
    return WeightSpectrum(np.zeros(K + 1), method, 0.0, samples, seed, degenerate=True)


def weights_exact(curve: CurveLike) -> WeightSpectrum:
    c = as_curve(curve)
    part = interval_partition_exact(c)
    total = part.measures[1:].sum()
    if part.lambda_max <= 0.0 or total <= 0.0:
        return _degenerate(c.K, "exact")
    return WeightSpectrum(part.measures / total, "exact", part.lambda_max)


def _from_counts(counts, M, method, lmax, seed=None) -> WeightSpectrum:
    w = counts / float(M)
    return WeightSpectrum(w, method, lmax, samples=M, seed=seed, counts=counts)


def _check_samples(M: int) -> int:
    M = int(M)
    if M < 1:
        raise CurveError("number of samples M must be >= 1")
    return M


def weights_mc(curve: CurveLike, M: int = 10**6, seed: int = 0, partitions: int = 1) -> WeightSpectrum:
    """Monte Carlo weights: frequencies of the minimizer under uniform slopes.

    The ``M`` draws are split into ``partitions`` contiguous shares, each fed
    by its own child stream of ``SeedSequence(seed)``; the result depends
    only on ``(seed, M, partitions)``.
    """
    c = as_curve(curve)
    M = _check_samples(M)
    if partitions < 1:
        raise CurveError("partitions must be >= 1")
    lmax = lambda_max(c)
    if lmax <= 0.0:
        return _degenerate(c.K, "mc", M, seed)
    counts = np.zeros(c.K + 1, dtype=np.int64)
    shares = [len(s) for s in np.array_split(np.arange(M), partitions)]
    children = np.random.SeedSequence(seed).spawn(partitions)
    for share, child in zip(shares, children):
        rng = np.random.default_rng(child)
        left = share
        while left > 0:
            n = min(left, _MC_BLOCK)
            kernels.count_argmin(c.values, rng.uniform(0.0, lmax, size=n), counts)
            left -= n
    return _from_counts(counts, M, "mc", lmax, seed)


def weights_grid(curve: CurveLike, M: int = 10**6) -> WeightSpectrum:
    """Deterministic weights from the midpoints of ``M`` equal slope cells."""
    c = as_curve(curve)
    M = _check_samples(M)
    lmax = lambda_max(c)
    if lmax <= 0.0:
        return _degenerate(c.K, "grid", M)
    counts = np.zeros(c.K + 1, dtype=np.int64)
    step = lmax / M
    for start in range(0, M, _MC_BLOCK):
        idx = np.arange(start, min(M, start + _MC_BLOCK), dtype=np.float64)
        kernels.count_argmin(c.values, (idx + 0.5) * step, counts)
    return _from_counts(counts, M, "grid", lmax)


def compute_weights(curve: CurveLike, method: str = "exact", M: int = 10**6, seed: int = 0) -> WeightSpectrum:
    if method == "exact":
        return weights_exact(curve)
    if method == "grid":
        return weights_grid(curve, M)
    if method == "mc":
        return weights_mc(curve, M, seed)
    raise CurveError(f"unknown weight method {method!r} (expected exact, grid or mc)")


def cumulative(spectrum: WeightSpectrum) -> np.ndarray:
    """``W_1..W_K``: running sums of the weights from ``k = 1``."""
    return np.cumsum(spectrum.weights[1:])


def elbow_set(spectrum: WeightSpectrum) -> list:
    return [int(k) for k in np.flatnonzero(spectrum.weights > 0.0)]


def select(spectrum: WeightSpectrum, level: float = 0.9) -> int:
    """Smallest ``k`` whose cumulative weight reaches ``level``."""
    if not 0.0 < level <= 1.0:
        raise CurveError(f"confidence level must lie in (0, 1], got {level}")
    if spectrum.degenerate:
        return 0
    W = cumulative(spectrum)
    hit = np.flatnonzero(W >= level - _LEVEL_SLACK)
    return int(hit[0]) + 1 if hit.size else spectrum.K
