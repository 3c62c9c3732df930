"""Exact Gaussian likelihood and conditional sum of squares."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.signal import lfilter

from ..errors import DegenerateVariance, TooShort
from .kalman import run_filter
from .model import ArimaOrder, ArimaParams, ar_polynomial, difference, ma_polynomial, require_stationary

LOG_2PI = math.log(2.0 * math.pi)


def _prepare(order: ArimaOrder, params: ArimaParams, values: Sequence[float]) -> np.ndarray:
    params.check(order)
    x = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("values must be complete and finite")
    need = max(order.p, order.q) + 1
    if len(x) - order.d < need:
        raise TooShort(f"{order} needs at least {need + order.d} observations, got {len(x)}")
    require_stationary(params.ar)
    return difference(x, order.d) - params.mean


def log_likelihood(order: ArimaOrder, params: ArimaParams, values: Sequence[float]) -> float:
    """Exact log-likelihood of the differenced, mean-adjusted data."""
    y = _prepare(order, params, values)
    v, F = run_filter(y, params.ar, params.ma)
    sigma2 = params.sigma2
    if sigma2 is None:
        raise ValueError("sigma2 is required to evaluate the likelihood")
    if sigma2 == 0:
        if np.any(v != 0):
            raise DegenerateVariance("sigma2 is zero but the one-step errors are not")
        return math.inf
    n = len(y)
    return float(-0.5 * (n * LOG_2PI + n * math.log(sigma2) + np.sum(np.log(F)) + np.sum(v * v / F) / sigma2))


def concentrated(v: np.ndarray, F: np.ndarray) -> tuple[float, float]:
    """Profile out sigma^2 from unit-scale filter output; returns (loglik, sigma2_hat)."""
    n = len(v)
    sigma2 = float(np.sum(v * v / F) / n)
    if not sigma2 > 0:
        raise DegenerateVariance("innovation variance estimate is zero")
    ll = -0.5 * n * (LOG_2PI + math.log(sigma2) + 1.0) - 0.5 * float(np.sum(np.log(F)))
    return ll, sigma2


def pointwise_loglik(v: np.ndarray, F: np.ndarray, sigma2: float) -> np.ndarray:
    """Per-observation log-likelihood contributions (prediction error decomposition)."""
    s = sigma2 * F
    return -0.5 * (LOG_2PI + np.log(s) + v * v / s)


def css(order: ArimaOrder, params: ArimaParams, values: Sequence[float]) -> float:
    """Conditional sum of squares with zero pre-sample innovations and observations at the mean."""
    y = _prepare(order, params, values)
    e = lfilter(ar_polynomial(params.ar), ma_polynomial(params.ma), y)
    return float(np.dot(e, e))
