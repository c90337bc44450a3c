import numpy as np
import pytest

from oracles import random_decreasing_curve
from sic import _accel, kernels


def _both(fn):
    out = {}
    before = _accel.numba_enabled()
    try:
        for flag in (True, False):
            if flag and not _accel.HAVE_NUMBA:
                continue
            _accel.set_numba(flag)
            out[flag] = fn()
    finally:
        _accel.set_numba(before)
    return out


def test_count_argmin_backends_identical(rng):
    v = random_decreasing_curve(rng, 40)
    lams = rng.uniform(0.0, 2.0, 100_000)
    res = _both(lambda: kernels.count_argmin(v, lams))
    first = next(iter(res.values()))
    for counts in res.values():
        np.testing.assert_array_equal(counts, first)
    assert first.sum() == lams.size


def test_count_argmin_tie_goes_to_smallest(backend):
    counts = kernels.count_argmin(np.array([10.0, 4.0, 2.0, 1.5, 0.0]), np.array([2.0, 6.0]))
    np.testing.assert_array_equal(counts, [1, 1, 0, 0, 0])


def test_count_argmin_accumulates(backend):
    counts = np.zeros(3, dtype=np.int64)
    kernels.count_argmin(np.array([2.0, 1.0, 0.0]), np.array([0.1, 0.1]), counts)
    kernels.count_argmin(np.array([2.0, 1.0, 0.0]), np.array([5.0]), counts)
    np.testing.assert_array_equal(counts, [1, 0, 2])


def _blobs(rng, n=300, sd=1.0):
    centers = np.array([[0.0, 0.0], [6.0, 0.0], [0.0, 6.0]])
    return np.vstack([c + sd * rng.standard_normal((n // 3, 2)) for c in centers])


def test_lloyd_backends_identical(rng):
    pts = _blobs(rng)
    init = pts[rng.choice(len(pts), 5, replace=False)]
    res = _both(lambda: kernels.lloyd(pts, init))
    ref = next(iter(res.values()))
    for labels, cents, energy in res.values():
        np.testing.assert_array_equal(labels, ref[0])
        np.testing.assert_allclose(cents, ref[1], rtol=1e-12)
        np.testing.assert_allclose(energy, ref[2], rtol=1e-10)


def test_lloyd_energy_non_increasing(backend, rng):
    pts = _blobs(rng)
    for _ in range(5):
        init = pts[rng.choice(len(pts), 7, replace=False)]
        _, _, energy = kernels.lloyd(pts, init)
        assert np.all(np.diff(energy) <= 1e-9 * energy[0])


def test_lloyd_recovers_separated_blobs(backend, rng):
    pts = _blobs(rng, sd=0.3)
    init = np.array([[0.0, 0.0], [6.0, 0.0], [0.0, 6.0]]) + 0.5
    labels, cents, _ = kernels.lloyd(pts, init)
    for j in range(3):
        assert np.all(labels[j * 100:(j + 1) * 100] == labels[j * 100])
    np.testing.assert_allclose(np.sort(cents[:, 0]), [0, 0, 6], atol=0.4)


def test_lloyd_reseeds_empty_cluster(backend):
    pts = np.array([[0.0], [0.1], [10.0], [10.1]])
    # second centroid starts far from every point and would stay empty
    labels, cents, _ = kernels.lloyd(pts, np.array([[5.0], [1000.0]]))
    assert set(labels.tolist()) == {0, 1}


def test_kmeanspp_backends_identical(rng):
    pts = _blobs(rng)
    u = rng.random((9, 4))
    res = _both(lambda: kernels.kmeanspp_indices(pts, 3, u))
    ref = next(iter(res.values()))
    for idx in res.values():
        np.testing.assert_array_equal(idx, ref)
    assert ref[0] == 3 and len(set(ref.tolist())) == 10


def test_kmeanspp_never_repeats_a_point(backend, rng):
    pts = _blobs(rng)
    idx = kernels.kmeanspp_indices(pts, 0, rng.random((20, 1)))
    assert len(set(idx.tolist())) == 21
