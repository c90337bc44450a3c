import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sic import core
from sic.builders import clustering, ideal, regression, spectral
from sic.errors import CurveError, DegenerateFitError, NumericalError, RankDeficientError


# --- regression -------------------------------------------------------------


def _noiseless(rng, N=60, K=5):
    X = rng.standard_normal((N, K))
    theta = rng.standard_normal(K + 1)
    y = theta[0] + X @ theta[1:]
    return regression.Dataset(y, X), theta


def test_noiseless_coefficients_recovered(rng):
    data, theta = _noiseless(rng)
    fits = regression.fit_nested(data)
    np.testing.assert_allclose(fits[-1].coefficients, theta, atol=1e-8)


def test_noiseless_full_fit_has_zero_residual(rng):
    data, _ = _noiseless(rng)
    with pytest.raises(DegenerateFitError):
        regression.gaussian_nll_curve(data)


def test_rss_non_increasing_and_curve_formula(rng):
    N, K = 80, 6
    X = rng.standard_normal((N, K))
    y = X[:, 0] + rng.standard_normal(N)
    data = regression.Dataset(y, X)
    fits = regression.fit_nested(data)
    rss = np.array([f.residual_sum_of_squares for f in fits])
    assert np.all(np.diff(rss) <= 1e-9 * rss[0])
    curve = regression.gaussian_nll_curve(data)
    expected = N * np.log(2 * np.pi) + N * np.log(rss / N) + N
    np.testing.assert_allclose(curve.values, expected, rtol=1e-12)
    assert fits[2].sigma2_hat == pytest.approx(rss[2] / N)


def test_empty_model_is_variance_around_mean(rng):
    y = rng.standard_normal(50) + 3.0
    data = regression.Dataset(y, rng.standard_normal((50, 2)))
    v0 = regression.gaussian_nll_curve(data).values[0]
    s2 = np.mean((y - y.mean()) ** 2)
    assert v0 == pytest.approx(50 * (np.log(2 * np.pi) + 1 + np.log(s2)), rel=1e-12)


def test_without_intercept_unit_variance_targets():
    # V(0) = N(log 2pi + 1) when the mean square of y is one
    y = np.array([1.0, -1.0, 1.0, -1.0])
    data = regression.Dataset(y, np.array([[1.0], [2.0], [3.0], [5.0]]))
    v0 = regression.gaussian_nll_curve(data, include_intercept=False).values[0]
    assert v0 == pytest.approx(4 * (np.log(2 * np.pi) + 1), rel=1e-14)


def test_rank_deficiency_reports_k(rng):
    X = rng.standard_normal((30, 4))
    X[:, 2] = X[:, 0] + X[:, 1]
    data = regression.Dataset(rng.standard_normal(30), X)
    with pytest.raises(RankDeficientError) as info:
        regression.gaussian_nll_curve(data)
    assert info.value.k == 3
    # the curve up to the last full-rank k is still available
    assert regression.gaussian_nll_curve(data, max_k=2).K == 2


def test_too_many_features():
    data = regression.Dataset(np.arange(3.0), np.ones((3, 5)))
    with pytest.raises(CurveError):
        regression.fit_nested(data)


def test_dataset_shape_checks():
    with pytest.raises(CurveError):
        regression.Dataset(np.zeros(3), np.zeros((4, 2)))
    with pytest.raises(CurveError):
        regression.Dataset([1.0, np.inf], [[1.0], [2.0]])


def test_vandermonde_rescaled():
    x = np.array([-5.0, 0.0, 5.0])
    V = regression.vandermonde(x, 3)
    np.testing.assert_allclose(V, [[-1, 1, -1], [0, 0, 0], [1, 1, 1]])
    np.testing.assert_allclose(regression.vandermonde(x, 2, rescale=False), [[-5, 25], [0, 0], [5, 25]])


def test_polynomial_curve_is_reproducible():
    x, y = regression.polynomial_data(seed=3)
    a = regression.polynomial_nll_curve(x, y, 8)
    x2, y2 = regression.polynomial_data(seed=3)
    b = regression.polynomial_nll_curve(x2, y2, 8)
    np.testing.assert_array_equal(a.values, b.values)
    assert a.K == 8 and np.all(np.diff(a.values) <= 1e-9)


def test_rescaling_does_not_change_the_likelihood():
    x, y = regression.polynomial_data(seed=1)
    a = regression.polynomial_nll_curve(x, y, 6).values
    raw = regression.gaussian_nll_curve(regression.Dataset(y, regression.vandermonde(x, 6, rescale=False))).values
    np.testing.assert_allclose(a, raw, rtol=1e-9)


# --- spectral ---------------------------------------------------------------


def test_eigen_recomposition(rng):
    A = rng.standard_normal((6, 6))
    S = A @ A.T
    vals, vecs = spectral.sym_eigen(S)
    assert np.all(np.diff(vals) <= 0)
    assert np.max(np.abs(vecs @ np.diag(vals) @ vecs.T - S)) <= 1e-10
    np.testing.assert_allclose(vecs.T @ vecs, np.eye(6), atol=1e-12)


def test_eigen_curve_of_population_covariance():
    c = spectral.eigen_curve(spectral.PCA_COVARIANCE)
    assert c.values[0] == pytest.approx(8.0, abs=1e-12)
    # the tridiagonal block has eigenvalues 2 and 2 +- 0.7 sqrt(2)
    r = 0.7 * np.sqrt(2.0)
    np.testing.assert_allclose(c.values[1:], [2 + r, 2, 2 - r, 1, 1], atol=1e-12)
    assert np.sum(c.values[1:]) == pytest.approx(8.0, abs=1e-12)


def test_eigen_rejects_bad_matrices():
    with pytest.raises(NumericalError):
        spectral.eigen_curve([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NumericalError):
        spectral.eigen_curve([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(CurveError):
        spectral.eigen_curve([[1.0, 2.0, 3.0]])


def test_eigen_from_data_matches_covariance():
    X = spectral.pca_sample(n=2000, seed=5)
    a = spectral.eigen_curve(X, from_data=True)
    b = spectral.eigen_curve(np.cov(X, rowvar=False))
    np.testing.assert_allclose(a.values, b.values, rtol=1e-12)


# --- ideal ------------------------------------------------------------------


def test_piecewise_linear_values():
    c = ideal.piecewise_linear_curve(ideal.PiecewiseLinearSpec((0, 2, 4), (4.0, 2.0, 1.0)))
    np.testing.assert_allclose(c.values, [4, 3, 2, 1.5, 1])


@pytest.mark.parametrize(
    "bp,vals",
    [((0,), (1.0,)), ((1, 3), (1.0, 0.0)), ((0, 3, 2), (1, 0, 0)), ((0, 1.5), (1, 0)), ((0, 2), (1, 0, 0))],
)
def test_piecewise_validation(bp, vals):
    with pytest.raises(CurveError):
        ideal.PiecewiseLinearSpec(bp, vals)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.5, 5.0), st.floats(0.0, 0.45), st.integers(1, 40), st.integers(1, 40))
def test_convex_two_piece_weights(s1, frac, k_b, tail):
    s2 = frac * s1
    K = k_b + tail
    w = core.weights_exact(ideal.convex_two_piece(s1, s2, k_b, K))
    if s2 > 0:
        assert w.weights[k_b] == pytest.approx(1 - s2 / s1, abs=1e-12)
        assert w.weights[K] == pytest.approx(s2 / s1, abs=1e-12)
    else:
        assert w.weights[k_b] == pytest.approx(1.0, abs=1e-12)


def test_accuracy_curve():
    c = ideal.accuracy_curve([0.5, 0.8, 0.9])
    np.testing.assert_allclose(c.values, [0.5, 0.2, 0.1])
    with pytest.raises(CurveError):
        ideal.accuracy_curve([0.5, 1.2])


# --- clustering -------------------------------------------------------------


def test_mixture_is_deterministic():
    a = clustering.five_gaussians(seed=4)
    b = clustering.five_gaussians(seed=4)
    np.testing.assert_array_equal(a.points, b.points)
    assert a.N == 2500 and a.points.shape == (2500, 2)


def test_mixture_moments():
    cloud = clustering.gaussian_mixture_cloud([[1.0, -2.0]], [[[2.0, 0.5], [0.5, 1.0]]], [20_000], seed=0)
    np.testing.assert_allclose(cloud.points.mean(axis=0), [1, -2], atol=0.05)
    np.testing.assert_allclose(np.cov(cloud.points, rowvar=False), [[2, 0.5], [0.5, 1]], atol=0.06)


def test_mixture_rejects_non_spd():
    with pytest.raises(NumericalError):
        clustering.gaussian_mixture_cloud([[0.0, 0.0]], [[[1.0, 2.0], [2.0, 1.0]]], [10])
    with pytest.raises(NumericalError):
        clustering.gaussian_mixture_cloud([[0.0, 0.0]], [[[1.0, 0.5], [0.0, 1.0]]], [10])


def test_within_variance_kinds():
    pts = np.array([[0.0], [2.0], [10.0]])
    labels = np.array([0, 0, 1])
    cents = np.array([[1.0], [10.0]])
    assert clustering.within_variance(pts, labels, cents, "sum") == 2.0
    assert clustering.within_variance(pts, labels, cents, "mean") == 1.0
    with pytest.raises(CurveError):
        clustering.within_variance(pts, labels, cents, "median")


def test_kmeans_curve_two_blobs(backend, rng):
    pts = np.vstack([rng.normal(0, 0.2, (60, 2)), rng.normal(5, 0.2, (60, 2))])
    c = clustering.kmeans_variance_curve(pts, 5, restarts=5, seed=1)
    # by far the largest drop is from one to two clusters
    drops = -np.diff(c.values)
    assert np.argmax(drops) == 0
    assert core.select(core.weights_exact(c), 0.9) == 1


def test_kmeans_curve_reproducible(backend):
    cloud = clustering.five_gaussians(seed=2, per_component=40)
    a = clustering.kmeans_variance_curve(cloud, 6, restarts=3, seed=9)
    b = clustering.kmeans_variance_curve(cloud, 6, restarts=3, seed=9)
    np.testing.assert_array_equal(a.values, b.values)


def test_kmeans_identical_points_degenerate():
    with pytest.raises(DegenerateFitError):
        clustering.kmeans_variance_curve(np.ones((10, 2)), 2, restarts=2)


@pytest.mark.parametrize("init", clustering.INIT_SCHEMES)
def test_kmeans_init_schemes(init):
    cloud = clustering.five_gaussians(seed=0, per_component=30)
    c = clustering.kmeans_variance_curve(cloud, 4, restarts=2, init=init, variance="sum")
    assert c.K == 4 and np.all(np.isfinite(c.values))


def test_kmeans_argument_checks():
    pts = np.zeros((3, 1)) + np.arange(3.0)[:, None]
    with pytest.raises(CurveError):
        clustering.kmeans_variance_curve(pts, 3)
    with pytest.raises(CurveError):
        clustering.kmeans_variance_curve(pts, 1, variance="bogus")
    with pytest.raises(CurveError):
        clustering.kmeans_variance_curve(pts, 1, init="bogus")


def test_greedy_trials_validated_and_used(rng):
    pts = clustering.five_gaussians(seed=0, per_component=30).points
    with pytest.raises(CurveError):
        clustering.initial_centroids(pts, 3, rng, "greedy-k-means++", trials=0)
    a = clustering.kmeans_variance_curve(pts, 3, restarts=2, seed=1, trials=1)
    b = clustering.kmeans_variance_curve(pts, 3, restarts=2, seed=1, trials=8)
    assert a.K == b.K == 3
