"""Bijection between R^p and the stationary region of AR(p) coefficients.

Unconstrained values map to partial autocorrelations through tanh, and
partial autocorrelations map to coefficients through the Durbin-Levinson
recursion. The same map serves invertible MA polynomials with a sign flip.
"""

from __future__ import annotations

import numpy as np

_PACF_LIMIT = 1.0 - 1e-10


def constrain(u) -> np.ndarray:
    r = np.tanh(np.asarray(u, dtype=float))
    phi = np.zeros(0)
    for k, rk in enumerate(r):
        phi = np.concatenate([phi - rk * phi[::-1], [rk]]) if k else np.array([rk])
    return phi


def unconstrain(phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=float).copy()
    p = len(phi)
    r = np.zeros(p)
    for k in range(p, 0, -1):
        rk = float(np.clip(phi[k - 1], -_PACF_LIMIT, _PACF_LIMIT))
        r[k - 1] = rk
        prev = phi[: k - 1]
        phi = (prev + rk * prev[::-1]) / (1.0 - rk * rk)
    return np.arctanh(r)


def constrain_ma(u) -> np.ndarray:
    return -constrain(u)


def unconstrain_ma(theta) -> np.ndarray:
    return unconstrain(-np.asarray(theta, dtype=float))
