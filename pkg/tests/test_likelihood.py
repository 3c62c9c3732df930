import math

import numpy as np
import pytest
from scipy.linalg import toeplitz

from oracles import dense_gaussian_loglik
from ricecast.arima import ArimaOrder, ArimaParams, css, log_likelihood
from ricecast.arima.kalman import constrain_pacf, stationary_covariance
from ricecast.arima.transform import constrain, unconstrain
from ricecast.errors import DegenerateVariance, NonStationary, TooShort

Y10 = [0.3, -1.2, 0.8, 1.5, -0.4, 0.0, 2.1, -0.7, 0.9, -1.1]
Y8 = [1.0, 0.4, -0.3, 0.8, 1.6, 0.2, -0.9, -0.5]


def _mvn_logpdf(y, cov):
    y = np.asarray(y)
    sign, logdet = np.linalg.slogdet(cov)
    return -0.5 * (len(y) * math.log(2 * math.pi) + logdet + y @ np.linalg.solve(cov, y))


def test_white_noise_closed_form():
    x = np.array(Y10)
    ll = log_likelihood(ArimaOrder(0, 0, 0), ArimaParams(0.0, (), (), 1.0), x)
    assert ll == pytest.approx(-len(x) / 2 * math.log(2 * math.pi) - np.sum(x * x) / 2, rel=1e-14)


def test_ma1_matches_banded_covariance():
    theta = 0.5
    cov = toeplitz([1 + theta**2, theta] + [0.0] * 8)
    expected = _mvn_logpdf(Y10, cov)
    # frozen from the dense-covariance oracle
    assert expected == pytest.approx(-18.50088566708819, rel=1e-12)
    ll = log_likelihood(ArimaOrder(0, 0, 1), ArimaParams(0.0, (), (theta,), 1.0), Y10)
    assert ll == pytest.approx(expected, rel=1e-10)


def test_ar1_matches_geometric_covariance():
    phi = 0.7
    cov = toeplitz(phi ** np.arange(8) / (1 - phi**2))
    expected = _mvn_logpdf(Y8, cov)
    assert expected == pytest.approx(-10.179680542269264, rel=1e-12)
    ll = log_likelihood(ArimaOrder(1, 0, 0), ArimaParams(0.0, (phi,), (), 1.0), Y8)
    assert ll == pytest.approx(expected, rel=1e-10)


def test_mean_and_scale_enter_the_density():
    order = ArimaOrder(1, 0, 1)
    params = ArimaParams(3.0, (0.4,), (-0.3,), 2.5)
    x = np.array(Y10) + 3.0
    expected = dense_gaussian_loglik(x, [0.4], [-0.3], 2.5, mean=3.0)
    assert log_likelihood(order, params, x) == pytest.approx(expected, rel=1e-10)


def test_differencing_applied_before_density():
    x = np.cumsum(Y10)
    ll = log_likelihood(ArimaOrder(0, 1, 1), ArimaParams(0.0, (), (0.2,), 1.0), x)
    expected = dense_gaussian_loglik(np.diff(x), [], [0.2], 1.0)
    assert ll == pytest.approx(expected, rel=1e-10)


def test_non_invertible_ma_still_exact():
    ll = log_likelihood(ArimaOrder(0, 0, 2), ArimaParams(0.0, (), (2.08, 2.74), 1.0), Y10)
    assert ll == pytest.approx(dense_gaussian_loglik(Y10, [], [2.08, 2.74], 1.0), rel=1e-9)


def test_errors():
    with pytest.raises(NonStationary):
        log_likelihood(ArimaOrder(1, 0, 0), ArimaParams(0.0, (1.2,), (), 1.0), Y10)
    with pytest.raises(DegenerateVariance):
        log_likelihood(ArimaOrder(0, 0, 0), ArimaParams(0.0, (), (), 0.0), Y10)
    with pytest.raises(TooShort):
        log_likelihood(ArimaOrder(0, 0, 3), ArimaParams(0.0, (), (0.1, 0.1, 0.1), 1.0), [1.0, 2.0, 3.0])


def test_css_examples():
    assert css(ArimaOrder(0, 0, 0), ArimaParams(0.0), Y10) == pytest.approx(sum(v * v for v in Y10))
    assert css(ArimaOrder(0, 0, 1), ArimaParams(0.0, (), (0.9,)), [0.0] * 5) == 0.0
    assert css(ArimaOrder(0, 0, 1), ArimaParams(0.0, (), (0.5,)), [1.0, 1.0]) == pytest.approx(1.25)


def test_css_hand_recursion_arma11():
    phi, theta, mu = 0.5, 0.3, 2.0
    x = [3.0, 1.0, 2.5, 2.0]
    y = [v - mu for v in x]
    e, prev_y, prev_e = [], 0.0, 0.0
    for v in y:
        cur = v - phi * prev_y - theta * prev_e
        e.append(cur)
        prev_y, prev_e = v, cur
    got = css(ArimaOrder(1, 0, 1), ArimaParams(mu, (phi,), (theta,)), x)
    assert got == pytest.approx(sum(c * c for c in e), rel=1e-14)


@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_pacf_transform_round_trip(p):
    rng = np.random.default_rng(p)
    u = rng.normal(size=p)
    phi = constrain(u)
    assert np.allclose(unconstrain(phi), u, atol=1e-10)
    assert np.allclose(constrain_pacf(u), phi, atol=1e-15)
    roots = np.roots(np.concatenate([[1.0], -phi])[::-1])
    assert np.all(np.abs(roots) > 1)


def test_stationary_covariance_solves_lyapunov():
    phi, theta = np.array([0.5, -0.2]), np.array([0.4, 0.1])
    P = stationary_covariance(phi, theta)
    r = 3
    T = np.zeros((r, r))
    T[:2, 0] = phi
    T[0, 1] = T[1, 2] = 1
    R = np.array([1.0, 0.4, 0.1])
    assert np.allclose(P, T @ P @ T.T + np.outer(R, R), atol=1e-12)
