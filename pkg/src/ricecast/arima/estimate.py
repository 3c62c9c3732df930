"""Maximum-likelihood ARIMA estimation."""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from ..criteria import all_criteria, param_count
from ..errors import DegenerateVariance, NoConvergence, TooShort
from .kalman import negative_profile_loglik, run_filter, run_filter_with_ones
from .likelihood import concentrated, css, pointwise_loglik
from .model import (
    ArimaFit,
    ArimaOrder,
    ArimaParams,
    FitOptions,
    difference,
    is_invertible,
    is_stationary,
)
from .transform import constrain, constrain_ma, unconstrain, unconstrain_ma


def _lagged(x: np.ndarray, lags: int, start: int) -> np.ndarray:
    """Columns x[t-1], ..., x[t-lags] for t = start..len(x)-1."""
    n = len(x)
    return np.column_stack([x[start - j : n - j] for j in range(1, lags + 1)])


def _shrink(coefs: np.ndarray, ok) -> np.ndarray:
    """Scale coefficients by lambda^j until ``ok`` holds; lambda < 1 pushes roots outward."""
    c = np.asarray(coefs, dtype=float)
    powers = np.arange(1, len(c) + 1)
    lam = 1.0
    for _ in range(60):
        trial = c * lam**powers
        if ok(trial):
            return trial
        lam *= 0.9
    return np.zeros_like(c)


def hannan_rissanen(y: Sequence[float], p: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Two-stage regression estimates of (phi, theta) for a zero-mean series.

    A long autoregression supplies residual proxies for the MA lags, then the
    series is regressed on its own lags and the lagged proxies.
    """
    y = np.asarray(y, dtype=float)
    n = len(y)
    if p == 0 and q == 0:
        return np.zeros(0), np.zeros(0)
    if q == 0:
        if n <= 2 * p + 1:
            return np.zeros(p), np.zeros(0)
        X = _lagged(y, p, p)
        phi = np.linalg.lstsq(X, y[p:], rcond=None)[0]
        return phi, np.zeros(0)

    m = min(max(p, q) + int(10 * math.log10(n)), n // 3)
    if m < 1 or n - m - q - p < p + q + 2:
        return np.zeros(p), np.zeros(q)
    X = _lagged(y, m, m)
    a = np.linalg.lstsq(X, y[m:], rcond=None)[0]
    resid = np.zeros(n)
    resid[m:] = y[m:] - X @ a
    start = m + max(p, q)
    cols = []
    if p:
        cols.append(_lagged(y, p, start))
    cols.append(_lagged(resid, q, start))
    coef = np.linalg.lstsq(np.column_stack(cols), y[start:], rcond=None)[0]
    return coef[:p], coef[p:]


class _Objective:
    """Negative profile log-likelihood over unconstrained ARMA coefficients.

    Both the innovation variance and the mean are profiled out; the mean by
    generalized least squares, using the innovations of a ones-vector run
    through the same filter.
    """

    def __init__(self, w, order, options):
        self.w = np.ascontiguousarray(w, dtype=float)
        self.order = order
        self.options = options

    def unpack(self, u):
        p = self.order.p
        ar = constrain(u[:p])
        if self.options.enforce_invertibility:
            ma = constrain_ma(u[p:])
        else:
            ma = np.asarray(u[p:], dtype=float)
        return ar, ma

    def pack(self, ar, ma):
        ma_u = unconstrain_ma(ma) if self.options.enforce_invertibility else np.asarray(ma, float)
        return np.concatenate([unconstrain(ar), ma_u])

    def filter(self, u):
        ar, ma = self.unpack(u)
        if not self.order.include_constant:
            v, F = run_filter(self.w, ar, ma)
            return 0.0, ar, ma, v, F
        vy, v1, F = run_filter_with_ones(self.w, ar, ma)
        mean = float(np.sum(vy * v1 / F) / np.sum(v1 * v1 / F))
        return mean, ar, ma, vy - mean * v1, F

    def __call__(self, u):
        val = negative_profile_loglik(
            np.asarray(u, dtype=float),
            self.w,
            self.order.p,
            self.options.enforce_invertibility,
            self.order.include_constant,
        )
        return val if math.isfinite(val) else math.inf


def _start_values(w, order, options):
    center = float(np.mean(w)) if order.include_constant else 0.0
    phi, theta = hannan_rissanen(w - center, order.p, order.q)
    phi = _shrink(phi, is_stationary)
    if options.enforce_invertibility:
        theta = _shrink(theta, is_invertible)
    return phi, theta


def _simplex(x0, step):
    n = len(x0)
    sim = np.tile(x0, (n + 1, 1))
    for i in range(n):
        sim[i + 1, i] += step
    return sim


def _nelder_mead(obj, x0, options):
    """Simplex search with one restart around the first optimum."""
    total = 0
    best_x, best_f = np.asarray(x0, float), obj(x0)
    converged = False
    for step in (0.1, 0.02):
        budget = options.max_iter - total
        if budget <= 0:
            break
        res = minimize(
            obj,
            best_x,
            method="Nelder-Mead",
            options={
                "initial_simplex": _simplex(best_x, step),
                "maxiter": budget,
                "maxfev": 20 * budget,
                "xatol": options.xtol * max(1.0, float(np.max(np.abs(best_x)))),
                "fatol": options.xtol * max(1.0, abs(best_f)) if math.isfinite(best_f) else options.xtol,
                "adaptive": len(best_x) > 4,
            },
        )
        total += res.nit
        improved = res.fun < best_f - 1e-9 * max(1.0, abs(best_f))
        if res.fun <= best_f:
            best_x, best_f = res.x, res.fun
        converged = res.status == 0
        if not converged or not improved:
            break
    return best_x, best_f, converged, total


def fit(
    values: Sequence[float],
    order: ArimaOrder,
    options: Optional[FitOptions] = None,
    *,
    name: Optional[str] = None,
    origin=None,
) -> ArimaFit:
    """Estimate an ARIMA model by exact maximum likelihood.

    The innovation variance and the mean are profiled out and the ARMA
    coefficients are searched with Nelder-Mead through a stationarity (and optionally
    invertibility) preserving reparameterization, started from
    Hannan-Rissanen estimates.

    Raises
    ------
    TooShort
        If fewer than ``k + 2`` observations remain after differencing.
    DegenerateVariance
        If the differenced series has no variation.
    NoConvergence
        If the simplex search exhausts ``options.max_iter``.
    """
    options = options or FitOptions()
    x = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("values must be complete and finite")
    k = param_count(order)
    if len(x) - order.d < k + 2:
        raise TooShort(f"{order} needs at least {k + 2 + order.d} observations, got {len(x)}")
    w = difference(x, order.d)
    if np.all(w == w[0]) and (order.include_constant or w[0] == 0):
        raise DegenerateVariance(f"{order}: differenced series is constant")

    phi, theta = _start_values(w, order, options)
    obj = _Objective(w, order, options)
    iterations = 0
    if order.p + order.q == 0:
        u = np.zeros(0)
    else:
        # warm start: whichever of Hannan-Rissanen and the origin has lower CSS
        center = float(np.mean(w)) if order.include_constant else 0.0
        zeros = ArimaParams(center, (0.0,) * order.p, (0.0,) * order.q)
        hr = ArimaParams(center, tuple(phi), tuple(theta))
        better = css(order.__class__(order.p, 0, order.q), hr, w) < css(order.__class__(order.p, 0, order.q), zeros, w)
        u0 = obj.pack(phi, theta) if better else np.zeros(order.p + order.q)
        u, _, converged, iterations = _nelder_mead(obj, u0, options)
        if not converged:
            mean, ar, ma, *_ = obj.filter(u)
            raise NoConvergence(
                f"{order}: simplex search did not converge in {options.max_iter} iterations",
                best=ArimaParams(mean, tuple(ar), tuple(ma), None),
            )

    mean, ar, ma, v, F = obj.filter(u)
    loglik, sigma2 = concentrated(v, F)
    params = ArimaParams(mean, tuple(ar), tuple(ma), sigma2)
    n = len(w)
    return ArimaFit(
        order=order,
        params=params,
        loglik=loglik,
        nobs=n,
        criteria=all_criteria(loglik, k, n),
        residuals=tuple(v),
        history=tuple(x),
        origin=origin,
        name=name,
        iterations=iterations,
        contributions=tuple(pointwise_loglik(v, F, sigma2)),
    )
