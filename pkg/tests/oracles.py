"""Independent reference computations for tests.

Nothing here imports ricecast: each oracle is a direct, naive evaluation of
the defining formula, so agreement with the library is meaningful.
"""

import math

import numpy as np
from scipy import integrate


def arma_autocovariance(ar, ma, sigma2, nlags, terms=4000):
    """gamma(0..nlags) from a long truncated MA(infinity) expansion."""
    psi = np.zeros(terms)
    psi[0] = 1.0
    for j in range(1, terms):
        acc = ma[j - 1] if j <= len(ma) else 0.0
        for i, phi in enumerate(ar, start=1):
            if j - i >= 0:
                acc += phi * psi[j - i]
        psi[j] = acc
    return np.array([sigma2 * np.dot(psi[: terms - h], psi[h:]) for h in range(nlags + 1)])


def dense_gaussian_loglik(y, ar, ma, sigma2, mean=0.0):
    """Log-density of y under N(mean, Toeplitz(gamma)) via a Cholesky factor."""
    y = np.asarray(y, dtype=float) - mean
    n = len(y)
    gamma = arma_autocovariance(ar, ma, sigma2, n - 1)
    idx = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
    cov = gamma[idx]
    L = np.linalg.cholesky(cov)
    z = np.linalg.solve(L, y)
    return -0.5 * (n * math.log(2 * math.pi) + 2 * np.sum(np.log(np.diag(L))) + z @ z)


def brute_acf(x, max_lag):
    n = len(x)
    mean = sum(x) / n
    den = sum((v - mean) ** 2 for v in x)
    out = []
    for k in range(max_lag + 1):
        num = 0.0
        for t in range(n - k):
            num += (x[t] - mean) * (x[t + k] - mean)
        out.append(num / den)
    return out


def chi2_sf_quadrature(x, df):
    """Upper tail by adaptive quadrature of the chi-square density."""
    k = df / 2.0
    logc = -k * math.log(2.0) - math.lgamma(k)

    def density(t):
        if t <= 0:
            return 0.0
        return math.exp(logc + (k - 1) * math.log(t) - t / 2.0)

    if x <= 0:
        return 1.0
    # integrate the smaller side for accuracy
    lower, _ = integrate.quad(density, 0.0, x, epsabs=1e-14, epsrel=1e-13, limit=200)
    upper, _ = integrate.quad(density, x, math.inf, epsabs=1e-14, epsrel=1e-13, limit=200)
    return upper if upper < 0.5 else 1.0 - lower


def brute_locf(values):
    out = []
    seen = None
    for v in values:
        if v is not None:
            seen = v
        out.append(seen)
    return out


def ma_recursion_forecast(mean, theta, residuals, h):
    """Point forecasts of an MA(q): mean + sum of theta_k * eps_{n+j-k}, future eps = 0."""
    q = len(theta)
    n = len(residuals)
    eps = {n - 1 - i: residuals[n - 1 - i] for i in range(min(q, n))}
    out = []
    for j in range(1, h + 1):
        total = mean
        for k in range(1, q + 1):
            t = n - 1 + j - k
            if t <= n - 1:
                total += theta[k - 1] * eps.get(t, 0.0)
        out.append(total)
    return out
