"""Kalman filter for a zero-mean ARMA(p, q) in Harvey's state-space form.

State dimension is ``r = max(p, q + 1)``. The transition matrix carries the
AR coefficients in its first column and an identity on the superdiagonal;
the disturbance loading is ``(1, theta_1, ..., theta_{r-1})``. The filter is
run with unit innovation variance so the scale can be concentrated out.

Because the first state element is observed without noise, the filtered
covariance has a zero first row and column, and the covariance prediction
step collapses to a shift: ``P'[i, j] = Ptt[i+1, j+1] + R[i] R[j]``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Absolute change in the predicted covariance below which the filter is
# treated as having reached its steady state.
STEADY_TOL = 1e-13
LOG_2PI = float(np.log(2.0 * np.pi))


@njit(cache=True)
def _system(phi, theta):
    p = phi.shape[0]
    q = theta.shape[0]
    r = max(p, q + 1)
    T = np.zeros((r, r))
    for i in range(p):
        T[i, 0] = phi[i]
    for i in range(r - 1):
        T[i, i + 1] = 1.0
    R = np.zeros(r)
    R[0] = 1.0
    for i in range(q):
        R[i + 1] = theta[i]
    return T, R


@njit(cache=True)
def stationary_covariance(phi, theta):
    """Solve P = T P T' + R R' for the initial state covariance.

    Uses the doubling iteration P <- P + A P A', A <- A A, which converges
    quadratically whenever the AR part is stationary (T is a nilpotent
    shift when p = 0, so it then terminates exactly).
    """
    T, R = _system(phi, theta)
    P = np.outer(R, R)
    A = T.copy()
    for _ in range(64):
        P = P + A @ P @ A.T
        A = A @ A
        # the next term is O(|A|^2 |P|)
        if np.max(np.abs(A)) < 1e-9:
            break
    return 0.5 * (P + P.T)


@njit(cache=True)
def _run(Y, phi, theta):
    """Filter every column of ``Y`` through the same (shared-gain) recursion."""
    n, m = Y.shape
    _, R = _system(phi, theta)
    r = R.shape[0]
    p = phi.shape[0]
    P = stationary_covariance(phi, theta)
    Pn = np.empty((r, r))
    A = np.zeros((r, m))
    att = np.empty(r)
    V = np.empty((n, m))
    F = np.empty(n)
    steady = False
    for t in range(n):
        f = P[0, 0]
        F[t] = f
        for c in range(m):
            e = Y[t, c] - A[0, c]
            V[t, c] = e
            g = e / f
            for i in range(r):
                att[i] = A[i, c] + P[i, 0] * g
            for i in range(r):
                nxt = att[i + 1] if i + 1 < r else 0.0
                A[i, c] = (phi[i] * att[0] if i < p else 0.0) + nxt
        if steady:
            continue
        diff = 0.0
        for i in range(r):
            for j in range(r):
                val = R[i] * R[j]
                if i + 1 < r and j + 1 < r:
                    val += P[i + 1, j + 1] - P[i + 1, 0] * P[0, j + 1] / f
                Pn[i, j] = val
                dd = abs(val - P[i, j])
                if dd > diff:
                    diff = dd
        for i in range(r):
            for j in range(r):
                P[i, j] = Pn[i, j]
        if diff < STEADY_TOL:
            steady = True
    return V, F


@njit(cache=True)
def constrain_pacf(u):
    """tanh onto (-1, 1) partial autocorrelations, then Durbin-Levinson to coefficients."""
    k = u.shape[0]
    phi = np.zeros(k)
    prev = np.zeros(k)
    for j in range(k):
        rj = np.tanh(u[j])
        for i in range(j):
            prev[i] = phi[i]
        for i in range(j):
            phi[i] = prev[i] - rj * prev[j - 1 - i]
        phi[j] = rj
    return phi


@njit(cache=True)
def negative_profile_loglik(u, w, p, invertible, constant):
    """Objective for the simplex search over unconstrained ARMA coefficients.

    The innovation variance and (when ``constant``) the GLS mean are
    profiled out. Returns +inf where the likelihood is degenerate.
    """
    phi = constrain_pacf(u[:p])
    if invertible:
        theta = -constrain_pacf(u[p:])
    else:
        theta = u[p:].copy()
    n = w.shape[0]
    if constant:
        Y = np.empty((n, 2))
        Y[:, 0] = w
        Y[:, 1] = 1.0
    else:
        Y = w.reshape((n, 1)).copy()
    V, F = _run(Y, phi, theta)
    mean = 0.0
    if constant:
        num = 0.0
        den = 0.0
        for t in range(n):
            num += V[t, 0] * V[t, 1] / F[t]
            den += V[t, 1] * V[t, 1] / F[t]
        mean = num / den
    ss = 0.0
    logdet = 0.0
    for t in range(n):
        e = V[t, 0] - mean * V[t, 1] if constant else V[t, 0]
        ss += e * e / F[t]
        logdet += np.log(F[t])
    sigma2 = ss / n
    if not sigma2 > 0.0 or not np.isfinite(ss):
        return np.inf
    ll = -0.5 * n * (LOG_2PI + np.log(sigma2) + 1.0) - 0.5 * logdet
    return -ll


def run_filter(y, phi, theta):
    """One-step prediction errors ``v`` and unit-scale variances ``F`` for ``y``."""
    Y = np.ascontiguousarray(np.asarray(y, dtype=np.float64).reshape(-1, 1))
    V, F = _run(Y, _arr(phi), _arr(theta))
    return V[:, 0], F


def run_filter_with_ones(y, phi, theta):
    """Filter ``y`` and a vector of ones together; used to profile out the mean."""
    y = np.asarray(y, dtype=np.float64)
    Y = np.ascontiguousarray(np.column_stack([y, np.ones_like(y)]))
    V, F = _run(Y, _arr(phi), _arr(theta))
    return V[:, 0], V[:, 1], F


def _arr(x):
    return np.ascontiguousarray(np.asarray(x, dtype=np.float64).reshape(-1))
