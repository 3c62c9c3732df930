"""ARIMA(p, d, q) models with exact Gaussian likelihood."""

from .estimate import fit, hannan_rissanen
from .forecast import ForecastResult, forecast
from .likelihood import css, log_likelihood
from .model import (
    ArimaFit,
    ArimaOrder,
    ArimaParams,
    FitOptions,
    difference,
    is_invertible,
    is_stationary,
    psi_weights,
    undifference,
)
from .simulate import simulate

__all__ = [
    "ArimaFit",
    "ArimaOrder",
    "ArimaParams",
    "FitOptions",
    "ForecastResult",
    "css",
    "difference",
    "fit",
    "forecast",
    "hannan_rissanen",
    "is_invertible",
    "is_stationary",
    "log_likelihood",
    "psi_weights",
    "simulate",
    "undifference",
]
