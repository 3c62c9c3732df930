"""Residual diagnostics: sample ACF, Ljung-Box portmanteau test, histogram."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import gammaincc

from .errors import DegenerateVariance, DegreesOfFreedom, TooShort
from .ingest import write_numeric_csv

HIST_BINS = 20


def acf(values: Sequence[float], max_lag: int) -> np.ndarray:
    """Sample autocorrelations r_0..r_max_lag (biased, full-sample denominator)."""
    x = np.asarray(values, dtype=float)
    n = len(x)
    if max_lag < 0 or n <= max_lag:
        raise TooShort(f"need more than {max_lag} values for lag {max_lag}, got {n}")
    dev = x - x.mean()
    denom = float(np.dot(dev, dev))
    if denom == 0.0:
        raise DegenerateVariance("series has zero variance; autocorrelation undefined")
    return np.array([np.dot(dev[: n - k], dev[k:]) / denom for k in range(max_lag + 1)])


def chi_square_sf(x: float, df: int) -> float:
    """Upper tail P(X > x) of a chi-square variable, as Q(df/2, x/2)."""
    if df < 1:
        raise ValueError(f"df must be at least 1, got {df}")
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    return float(gammaincc(df / 2.0, x / 2.0))


@dataclass(frozen=True)
class LjungBox:
    statistic: float
    df: int
    p_value: float
    lags: int


def ljung_box(residuals: Sequence[float], lags: int, fitdf: int = 0) -> LjungBox:
    if lags <= fitdf:
        raise DegreesOfFreedom(f"lags={lags} must exceed fitdf={fitdf}")
    x = np.asarray(residuals, dtype=float)
    n = len(x)
    if n <= lags:
        raise TooShort(f"need more than {lags} residuals, got {n}")
    r = acf(x, lags)[1:]
    k = np.arange(1, lags + 1)
    q = float(n * (n + 2) * np.sum(r * r / (n - k)))
    df = lags - fitdf
    return LjungBox(q, df, chi_square_sf(q, df), lags)


def default_lags(n: int, fitdf: int) -> int:
    return max(min(10, n // 5), fitdf + 1)


@dataclass(frozen=True)
class DiagnosticsReport:
    acf_values: tuple[float, ...]
    ljung_box: LjungBox
    residual_mean: float
    residual_sd: float
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    name: Optional[str] = None

    def to_dict(self) -> dict:
        lb = self.ljung_box
        return {
            "name": self.name,
            "acf": list(self.acf_values),
            "ljung_box": {"statistic": lb.statistic, "df": lb.df, "p_value": lb.p_value, "lags": lb.lags},
            "residual_mean": self.residual_mean,
            "residual_sd": self.residual_sd,
            "histogram": {"edges": list(self.bin_edges), "counts": list(self.counts)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def acf_csv(self) -> str:
        return write_numeric_csv(["lag", "acf"], [[k, float(v)] for k, v in enumerate(self.acf_values)])

    def histogram_csv(self) -> str:
        e = self.bin_edges
        rows = [[0.5 * (e[i] + e[i + 1]), c] for i, c in enumerate(self.counts)]
        return write_numeric_csv(["bin_center", "count"], rows)


def diagnose_residuals(
    residuals: Sequence[float],
    fitdf: int = 0,
    lags: Optional[int] = None,
    max_lag: Optional[int] = None,
    name: Optional[str] = None,
) -> DiagnosticsReport:
    """Summarize residuals for a fitted model; ``fitdf`` is usually p + q."""
    x = np.asarray(residuals, dtype=float)
    n = len(x)
    lags = default_lags(n, fitdf) if lags is None else lags
    max_lag = min(n - 1, max(lags, 20)) if max_lag is None else max_lag
    lb = ljung_box(x, lags, fitdf)
    counts, edges = np.histogram(x, bins=HIST_BINS, range=(float(x.min()), float(x.max())))
    return DiagnosticsReport(
        acf_values=tuple(float(v) for v in acf(x, max_lag)),
        ljung_box=lb,
        residual_mean=float(x.mean()),
        residual_sd=float(x.std(ddof=1)) if n > 1 else 0.0,
        bin_edges=tuple(float(v) for v in edges),
        counts=tuple(int(c) for c in counts),
        name=name,
    )


def diagnose_fit(fit, lags: Optional[int] = None) -> DiagnosticsReport:
    return diagnose_residuals(fit.residuals, fitdf=fit.order.p + fit.order.q, lags=lags, name=fit.name)
