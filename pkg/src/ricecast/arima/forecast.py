"""Multi-step point forecasts and their standard errors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date, timedelta
from typing import Optional

import numpy as np

from .model import ArimaFit, difference, integrated_ar, psi_weights


@dataclass(frozen=True)
class ForecastResult:
    origin: Optional[date]
    points: tuple[float, ...]
    std_errors: tuple[float, ...]
    name: Optional[str] = None

    @property
    def horizons(self) -> range:
        return range(1, len(self.points) + 1)

    @property
    def dates(self) -> list[date]:
        if self.origin is None:
            raise ValueError("forecast has no origin date")
        return [self.origin + timedelta(days=h) for h in self.horizons]


def _tail(seq, k):
    """Last ``k`` entries of ``seq``, left-padded with zeros."""
    arr = [float(x) for x in seq[-k:]] if k else []
    return [0.0] * (k - len(arr)) + arr


def forecast(fit: ArimaFit, h: int) -> ForecastResult:
    """Conditional-expectation forecasts for horizons 1..h.

    AR terms recurse on observed then forecast values of the differenced
    series; MA terms use the stored in-sample residuals while the lag still
    reaches into the sample and zero afterwards. Residuals absent from the
    fit (coefficients only) count as zero.
    """
    if h < 1:
        raise ValueError("horizon must be at least 1")
    o, prm = fit.order, fit.params
    mu = prm.mean
    p, d, q = o.p, o.d, o.q
    if (p or d) and len(fit.history) < d + max(p, 1):
        raise ValueError(f"{o}: forecasting needs in-sample history")

    w_hist = _tail(difference(fit.history, d), p) if p else []
    eps = _tail(fit.residuals, q)
    # dev[i] holds w - mu for the p most recent (observed or forecast) steps
    dev = [x - mu for x in w_hist]
    w_fc = []
    for j in range(1, h + 1):
        val = mu
        for i in range(1, p + 1):
            val += prm.ar[i - 1] * dev[-i]
        for k in range(j, q + 1):
            val += prm.ma[k - 1] * eps[q - 1 - (k - j)]
        w_fc.append(val)
        if p:
            dev.append(val - mu)
            dev = dev[-p:]

    points = np.asarray(w_fc)
    if d:
        x = np.asarray(fit.history, dtype=float)
        lasts = [difference(x, k)[-1] for k in range(d)]
        for k in reversed(range(d)):
            points = lasts[k] + np.cumsum(points)

    if prm.sigma2 is None:
        se = [math.nan] * h
    else:
        psi = psi_weights(integrated_ar(prm.ar, d), prm.ma, h)
        se = list(np.sqrt(prm.sigma2 * np.cumsum(psi * psi)))
    return ForecastResult(fit.origin, tuple(float(v) for v in points), tuple(float(s) for s in se), fit.name)
