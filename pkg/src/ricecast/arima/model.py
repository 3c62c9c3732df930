"""ARIMA model types and polynomial helpers.

Sign conventions: the AR polynomial is ``1 - phi_1 B - ... - phi_p B^p`` and
the MA polynomial is ``1 + theta_1 B + ... + theta_q B^q``. ``mean`` is the
process mean of the d-times differenced series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import date
from typing import Optional, Sequence

import numpy as np

from ..errors import NonStationary, TooShort

MAX_P = 12
MAX_D = 2
MAX_Q = 12


@dataclass(frozen=True, order=True)
class ArimaOrder:
    p: int = 0
    d: int = 0
    q: int = 0
    include_constant: bool = True

    def __post_init__(self):
        for label, val, hi in (("p", self.p, MAX_P), ("d", self.d, MAX_D), ("q", self.q, MAX_Q)):
            if not isinstance(val, (int, np.integer)) or isinstance(val, bool):
                raise TypeError(f"{label} must be an integer, got {val!r}")
            if not 0 <= val <= hi:
                raise ValueError(f"{label}={val} outside [0, {hi}]")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.p, self.d, self.q)

    def __str__(self):
        c = "" if self.include_constant else ", no constant"
        return f"ARIMA({self.p},{self.d},{self.q}{c})"


@dataclass(frozen=True)
class ArimaParams:
    mean: float = 0.0
    ar: tuple[float, ...] = ()
    ma: tuple[float, ...] = ()
    sigma2: Optional[float] = 1.0

    def __post_init__(self):
        object.__setattr__(self, "mean", float(self.mean))
        object.__setattr__(self, "ar", tuple(float(x) for x in self.ar))
        object.__setattr__(self, "ma", tuple(float(x) for x in self.ma))
        if self.sigma2 is not None:
            object.__setattr__(self, "sigma2", float(self.sigma2))
            if not self.sigma2 >= 0:
                raise ValueError(f"sigma2 must be non-negative, got {self.sigma2}")

    def check(self, order: ArimaOrder):
        if len(self.ar) != order.p or len(self.ma) != order.q:
            raise ValueError(
                f"{order} needs {order.p} AR and {order.q} MA coefficients, "
                f"got {len(self.ar)} and {len(self.ma)}"
            )


@dataclass(frozen=True)
class FitOptions:
    enforce_invertibility: bool = True
    max_iter: int = 2000
    xtol: float = 1e-8


@dataclass(frozen=True)
class ArimaFit:
    """Estimated (or loaded) model plus the in-sample material forecasting needs.

    ``history`` holds the original-scale observations and ``residuals`` the
    one-step prediction errors on the differenced scale. Both may be empty
    for a model loaded from coefficients only.
    """

    order: ArimaOrder
    params: ArimaParams
    loglik: Optional[float] = None
    nobs: int = 0
    criteria: Optional[dict] = None
    residuals: tuple[float, ...] = ()
    history: tuple[float, ...] = ()
    origin: Optional[date] = None
    name: Optional[str] = None
    iterations: int = 0
    contributions: tuple[float, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        self.params.check(self.order)
        object.__setattr__(self, "residuals", tuple(float(x) for x in self.residuals))
        object.__setattr__(self, "history", tuple(float(x) for x in self.history))

    @property
    def k(self) -> int:
        from ..criteria import param_count

        return param_count(self.order)


def difference(values: Sequence[float], d: int) -> np.ndarray:
    """Apply ``d`` passes of first differencing."""
    x = np.asarray(values, dtype=float)
    if d < 0:
        raise ValueError("d must be non-negative")
    if len(x) <= d:
        raise TooShort(f"need more than {d} values to difference {d} times, got {len(x)}")
    for _ in range(d):
        x = np.diff(x)
    return x


def undifference(diffed: Sequence[float], initial: Sequence[float]) -> np.ndarray:
    """Invert :func:`difference` given the first ``d`` original values."""
    d = len(initial)
    init = np.asarray(initial, dtype=float)
    # heads[k] is the first value of the k-th difference of the original series
    heads = []
    level = init
    for _ in range(d):
        heads.append(level[0])
        level = np.diff(level)
    x = np.asarray(diffed, dtype=float)
    for k in reversed(range(d)):
        x = np.concatenate([[heads[k]], heads[k] + np.cumsum(x)])
    return x


def ar_polynomial(ar: Sequence[float]) -> np.ndarray:
    """Coefficients of 1 - sum(phi_j B^j) in increasing powers of B."""
    return np.concatenate([[1.0], -np.asarray(ar, dtype=float)])


def ma_polynomial(ma: Sequence[float]) -> np.ndarray:
    return np.concatenate([[1.0], np.asarray(ma, dtype=float)])


def min_root_modulus(poly: np.ndarray) -> float:
    """Smallest |z| over roots of a polynomial given in increasing powers."""
    coeffs = np.trim_zeros(np.asarray(poly, dtype=float), "b")
    if len(coeffs) <= 1:
        return math.inf
    roots = np.roots(coeffs[::-1])
    return float(np.min(np.abs(roots)))


def is_stationary(ar: Sequence[float]) -> bool:
    return min_root_modulus(ar_polynomial(ar)) > 1.0


def is_invertible(ma: Sequence[float]) -> bool:
    return min_root_modulus(ma_polynomial(ma)) > 1.0


def require_stationary(ar: Sequence[float]):
    if len(ar) and not is_stationary(ar):
        raise NonStationary(f"AR polynomial with coefficients {tuple(ar)} has a root inside the unit circle")


def integrated_ar(ar: Sequence[float], d: int) -> np.ndarray:
    """AR coefficients of phi(B) (1 - B)^d, in the 1 - sum(a_j B^j) sign convention."""
    poly = ar_polynomial(ar)
    for _ in range(d):
        poly = np.convolve(poly, [1.0, -1.0])
    return -poly[1:]


def psi_weights(ar: Sequence[float], ma: Sequence[float], n: int) -> np.ndarray:
    """First ``n`` impulse-response weights of theta(B) / phi(B)."""
    ar = np.asarray(ar, dtype=float)
    ma = np.asarray(ma, dtype=float)
    psi = np.zeros(n)
    if n == 0:
        return psi
    psi[0] = 1.0
    for j in range(1, n):
        acc = ma[j - 1] if j <= len(ma) else 0.0
        for i in range(1, min(j, len(ar)) + 1):
            acc += ar[i - 1] * psi[j - i]
        psi[j] = acc
    return psi
