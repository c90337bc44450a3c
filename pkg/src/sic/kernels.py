"""Hot numeric loops, each with a numba kernel and a numpy fallback.

The public functions here dispatch on :func:`sic._accel.numba_enabled`.
Both paths evaluate the same floating point expressions in the same
order, so they agree bit-for-bit on the penalized-cost argmin and to
rounding on the k-means energies.
"""

import numpy as np

from . import _accel
from ._accel import njit

# draws per numpy block; bounds the (block, K+1) cost matrix
_NUMPY_BLOCK = 1 << 14


@njit
def _count_argmin_nb(values, lambdas, counts):
    n_models = values.shape[0]
    for i in range(lambdas.shape[0]):
        lam = lambdas[i]
        best = values[0]
        arg = 0
        for k in range(1, n_models):
            c = values[k] + lam * k
            if c < best:
                best = c
                arg = k
        counts[arg] += 1


def _count_argmin_np(values, lambdas, counts):
    ks = np.arange(values.shape[0], dtype=np.float64)
    for start in range(0, lambdas.shape[0], _NUMPY_BLOCK):
        lam = lambdas[start:start + _NUMPY_BLOCK]
        costs = values[None, :] + lam[:, None] * ks[None, :]
        counts += np.bincount(np.argmin(costs, axis=1), minlength=values.shape[0])


def count_argmin(values, lambdas, counts=None):
    """Histogram of ``argmin_k values[k] + lam * k`` over ``lambdas``.

    Ties go to the smallest ``k``. ``counts`` is accumulated in place when
    given, which lets callers stream draws in blocks.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    lambdas = np.ascontiguousarray(lambdas, dtype=np.float64)
    if counts is None:
        counts = np.zeros(values.shape[0], dtype=np.int64)
    if _accel.numba_enabled():
        _count_argmin_nb(values, lambdas, counts)
    else:
        _count_argmin_np(values, lambdas, counts)
    return counts


@njit
def _sqdist(points, i, centroids, j):
    s = 0.0
    for t in range(points.shape[1]):
        diff = points[i, t] - centroids[j, t]
        s += diff * diff
    return s


@njit
def _lloyd_nb(points, centroids, max_iter, energy):
    # Hamerly's bounds: skip the full scan for points whose upper bound on
    # the distance to their centroid is below a lower bound for all others.
    n, d = points.shape
    c = centroids.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    upper = np.empty(n)
    lower = np.empty(n)
    half_gap = np.empty(c)
    moved = np.zeros(c)
    old = np.empty((c, d))
    sums = np.zeros((c, d))
    counts = np.zeros(c, dtype=np.int64)
    dist = np.empty(n)
    n_iter = 0
    for it in range(max_iter):
        for j in range(c):
            g = np.inf
            for jj in range(c):
                if jj != j:
                    q = _sqdist(centroids, j, centroids, jj)
                    if q < g:
                        g = q
            half_gap[j] = 0.5 * np.sqrt(g)
        changed = False
        for i in range(n):
            a = labels[i]
            if a >= 0:
                bound = half_gap[a] if half_gap[a] > lower[i] else lower[i]
                if upper[i] <= bound:
                    continue
                upper[i] = np.sqrt(_sqdist(points, i, centroids, a))
                if upper[i] <= bound:
                    continue
            best = np.inf
            second = np.inf
            arg = 0
            for j in range(c):
                q = _sqdist(points, i, centroids, j)
                if q < best:
                    second = best
                    best = q
                    arg = j
                elif q < second:
                    second = q
            if arg != a:
                changed = True
                labels[i] = arg
            upper[i] = np.sqrt(best)
            lower[i] = np.sqrt(second)
        e = 0.0
        for i in range(n):
            q = _sqdist(points, i, centroids, labels[i])
            dist[i] = q
            e += q
        energy[it] = e
        n_iter = it + 1
        if not changed:
            break
        old[:, :] = centroids
        sums[:, :] = 0.0
        counts[:] = 0
        for i in range(n):
            j = labels[i]
            counts[j] += 1
            for t in range(d):
                sums[j, t] += points[i, t]
        for j in range(c):
            if counts[j] > 0:
                for t in range(d):
                    centroids[j, t] = sums[j, t] / counts[j]
        for j in range(c):
            if counts[j] == 0:
                far = 0
                for i in range(1, n):
                    if dist[i] > dist[far]:
                        far = i
                for t in range(d):
                    centroids[j, t] = points[far, t]
                dist[far] = -1.0
        first = 0.0
        second = 0.0
        arg = 0
        for j in range(c):
            moved[j] = np.sqrt(_sqdist(centroids, j, old, j))
            if moved[j] > first:
                second = first
                first = moved[j]
                arg = j
            elif moved[j] > second:
                second = moved[j]
        for i in range(n):
            a = labels[i]
            upper[i] += moved[a]
            lower[i] -= second if a == arg else first
    return labels, n_iter


def _lloyd_np(points, centroids, max_iter, energy):
    n = points.shape[0]
    c = centroids.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    n_iter = 0
    for it in range(max_iter):
        sq = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        new = np.argmin(sq, axis=1)
        dist = sq[np.arange(n), new]
        energy[it] = dist.sum()
        n_iter = it + 1
        if np.array_equal(new, labels):
            break
        labels = new
        counts = np.bincount(labels, minlength=c)
        nonempty = counts > 0
        for t in range(points.shape[1]):
            s = np.bincount(labels, weights=points[:, t], minlength=c)
            centroids[nonempty, t] = s[nonempty] / counts[nonempty]
        for j in np.flatnonzero(~nonempty):
            far = int(np.argmax(dist))
            centroids[j] = points[far]
            dist[far] = -1.0
    return labels, n_iter


def lloyd(points, init_centroids, max_iter=300):
    """Run Lloyd's k-means from fixed initial centroids.

    Stops when an assignment pass changes no label or after ``max_iter``
    passes. A centroid left without members is moved onto the point that
    is currently farthest from its own centroid.

    Returns
    -------
    labels : ndarray of int
    centroids : ndarray, the cluster means of the final labels
    energy : ndarray, total squared distance after each assignment pass
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    centroids = np.array(init_centroids, dtype=np.float64, order="C", copy=True)
    energy = np.zeros(max_iter)
    if _accel.numba_enabled():
        labels, n_iter = _lloyd_nb(points, centroids, max_iter, energy)
    else:
        labels, n_iter = _lloyd_np(points, centroids, max_iter, energy)
    # means of the final partition (identical to `centroids` after convergence)
    c = centroids.shape[0]
    counts = np.bincount(labels, minlength=c)
    for t in range(points.shape[1]):
        s = np.bincount(labels, weights=points[:, t], minlength=c)
        nz = counts > 0
        centroids[nz, t] = s[nz] / counts[nz]
    return labels, centroids, energy[:n_iter]


@njit
def _kmeanspp_nb(points, first, uniforms):
    n, d = points.shape
    steps, trials = uniforms.shape
    chosen = np.empty(steps + 1, dtype=np.int64)
    chosen[0] = first
    d2 = np.empty(n)
    for i in range(n):
        s = 0.0
        for t in range(d):
            diff = points[i, t] - points[first, t]
            s += diff * diff
        d2[i] = s
    cdf = np.empty(n)
    trial = np.empty(n)
    best_d2 = np.empty(n)
    for step in range(steps):
        acc = 0.0
        for i in range(n):
            acc += d2[i]
            cdf[i] = acc
        best_pot = np.inf
        best_idx = 0
        for r in range(trials):
            c = np.searchsorted(cdf, uniforms[step, r] * acc, side="right")
            if c >= n:
                c = n - 1
            pot = 0.0
            for i in range(n):
                s = 0.0
                for t in range(d):
                    diff = points[i, t] - points[c, t]
                    s += diff * diff
                v = s if s < d2[i] else d2[i]
                trial[i] = v
                pot += v
            if pot < best_pot:
                best_pot = pot
                best_idx = c
                best_d2[:] = trial
        chosen[step + 1] = best_idx
        d2[:] = best_d2
    return chosen


def _kmeanspp_np(points, first, uniforms):
    steps, trials = uniforms.shape
    chosen = [first]
    d2 = ((points - points[first]) ** 2).sum(axis=1)
    for step in range(steps):
        cdf = np.cumsum(d2)
        cands = np.minimum(np.searchsorted(cdf, uniforms[step] * cdf[-1], side="right"), len(d2) - 1)
        best = None
        for c in cands:
            trial = np.minimum(d2, ((points - points[c]) ** 2).sum(axis=1))
            pot = trial.sum()
            if best is None or pot < best[0]:
                best = (pot, int(c), trial)
        _, nxt, d2 = best
        chosen.append(nxt)
    return np.array(chosen, dtype=np.int64)


def kmeanspp_indices(points, first, uniforms):
    """Greedy k-means++ seeding driven by pre-drawn uniforms.

    ``uniforms[s, r]`` selects the ``r``-th candidate of seeding step ``s``
    by inverse-CDF sampling on the squared distance to the nearest chosen
    point; of the candidates, the one giving the lowest total squared
    distance wins. With one column this is plain k-means++.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    uniforms = np.ascontiguousarray(uniforms, dtype=np.float64)
    if _accel.numba_enabled():
        return _kmeanspp_nb(points, int(first), uniforms)
    return _kmeanspp_np(points, int(first), uniforms)
