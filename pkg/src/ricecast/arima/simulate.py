from __future__ import annotations

import math

import numpy as np
from scipy.signal import lfilter

from ..errors import TooShort
from .model import ArimaOrder, ArimaParams, ar_polynomial, ma_polynomial, require_stationary


def simulate(order: ArimaOrder, params: ArimaParams, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` values from the model with a private generator seeded by ``seed``.

    The ARMA part runs on the differenced scale after a burn-in of
    ``max(p, q) + 100`` steps; the result is then integrated ``d`` times
    starting from zero.
    """
    params.check(order)
    require_stationary(params.ar)
    if n <= order.d:
        raise TooShort(f"n={n} must exceed d={order.d}")
    rng = np.random.default_rng(seed)
    burn = max(order.p, order.q) + 100
    m = n - order.d
    sigma = math.sqrt(params.sigma2 or 0.0)
    eps = rng.standard_normal(m + burn) * sigma
    w = lfilter(ma_polynomial(params.ma), ar_polynomial(params.ar), eps)[burn:] + params.mean
    x = w
    for _ in range(order.d):
        x = np.concatenate([[0.0], np.cumsum(x)])
    return x
