"""Penalized-likelihood information criteria."""

from __future__ import annotations

import math

from .errors import SampleTooSmall


def param_count(order) -> int:
    """Estimated parameters: AR + MA coefficients, the constant if any, and sigma^2."""
    return order.p + order.q + (1 if order.include_constant else 0) + 1


def aic(loglik: float, k: int) -> float:
    return 2 * k - 2 * loglik


def aicc(aic_value: float, k: int, n: int) -> float:
    denom = n - k - 1
    if denom <= 0:
        raise SampleTooSmall(f"AICc undefined for n={n}, k={k} (need n - k - 1 > 0)")
    return aic_value + (2 * k * k + 2 * k) / denom


def bic(loglik: float, k: int, n: int) -> float:
    if n < 1:
        raise ValueError("n must be at least 1")
    return k * math.log(n) - 2 * loglik


def all_criteria(loglik: float, k: int, n: int) -> dict[str, float]:
    a = aic(loglik, k)
    return {"aic": a, "aicc": aicc(a, k, n), "bic": bic(loglik, k, n)}
