"""Information-criterion driven order search over an exhaustive (p, d, q) grid.

Candidates with different differencing degrees describe different data
(the d-times differenced series lose d observations), so their likelihoods
are not directly comparable. Every candidate is therefore scored on a
common sample: the log-likelihood of observations ``max_d + 1 .. N``
conditional on the first ``max_d``, which is the sum of that candidate's
prediction-error contributions from differenced index ``max_d - d`` on.
When ``max_d == 0`` this is simply the full exact log-likelihood.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .arima import ArimaFit, ArimaOrder, FitOptions, fit
from .arima.io import fit_to_dict
from .arima.model import MAX_D, MAX_P, MAX_Q
from .criteria import aic, aicc, all_criteria, bic, param_count
from .errors import (
    DegenerateVariance,
    NoConvergence,
    NonStationary,
    NoViableModel,
    RicecastError,
    SampleTooSmall,
    TooShort,
)
from .ingest import write_numeric_csv

__all__ = [
    "Candidate",
    "SearchConfig",
    "SearchReport",
    "aic",
    "aicc",
    "auto_arima",
    "bic",
    "param_count",
]

CRITERIA = ("aic", "aicc", "bic")

_STATUS = {
    NoConvergence: "no_convergence",
    DegenerateVariance: "degenerate_variance",
    TooShort: "too_short",
    SampleTooSmall: "sample_too_small",
    NonStationary: "non_stationary",
}


@dataclass(frozen=True)
class SearchConfig:
    max_p: int = 5
    max_d: int = 2
    max_q: int = 5
    criterion: str = "aicc"
    constant: str = "auto"  # "auto" (iff d == 0), "always" or "never"
    fit_options: FitOptions = field(default_factory=FitOptions)

    def __post_init__(self):
        object.__setattr__(self, "criterion", self.criterion.lower())
        if self.criterion not in CRITERIA:
            raise ValueError(f"criterion must be one of {CRITERIA}, got {self.criterion!r}")
        if self.constant not in ("auto", "always", "never"):
            raise ValueError(f"unknown constant policy {self.constant!r}")
        for label, val, hi in (("max_p", self.max_p, MAX_P), ("max_d", self.max_d, MAX_D), ("max_q", self.max_q, MAX_Q)):
            if not 0 <= val <= hi:
                raise ValueError(f"{label}={val} outside [0, {hi}]")

    def include_constant(self, d: int) -> bool:
        if self.constant == "auto":
            return d == 0
        return self.constant == "always"

    def grid(self) -> list[ArimaOrder]:
        return [
            ArimaOrder(p, d, q, self.include_constant(d))
            for p in range(self.max_p + 1)
            for d in range(self.max_d + 1)
            for q in range(self.max_q + 1)
        ]


@dataclass(frozen=True)
class Candidate:
    order: ArimaOrder
    status: str
    k: int
    n: int = 0
    loglik: float = math.nan
    criteria: dict = field(default_factory=dict)
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def sort_key(self, criterion: str):
        return (self.criteria[criterion], self.k, self.order.triple)


@dataclass(frozen=True)
class SearchReport:
    config: SearchConfig
    candidates: tuple[Candidate, ...]
    winner: ArimaFit

    @property
    def ranked(self) -> list[Candidate]:
        return [c for c in self.candidates if c.ok]

    @property
    def best(self) -> Candidate:
        return self.ranked[0]

    def to_csv(self) -> str:
        rows = []
        for c in self.candidates:
            crit = [c.criteria.get(name, math.nan) for name in CRITERIA]
            rows.append([c.order.p, c.order.d, c.order.q, int(c.order.include_constant), c.k, c.n, float(c.loglik), *crit, c.status])
        return write_numeric_csv(["p", "d", "q", "constant", "k", "n", "loglik", *CRITERIA, "status"], rows)

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            "config": {
                "max_p": cfg.max_p,
                "max_d": cfg.max_d,
                "max_q": cfg.max_q,
                "criterion": cfg.criterion,
                "constant": cfg.constant,
                "invertibility": cfg.fit_options.enforce_invertibility,
            },
            "candidates": [
                {
                    "order": {"p": c.order.p, "d": c.order.d, "q": c.order.q, "constant": c.order.include_constant},
                    "status": c.status,
                    "k": c.k,
                    "n": c.n,
                    "loglik": None if math.isnan(c.loglik) else c.loglik,
                    "criteria": c.criteria or None,
                    "message": c.message,
                }
                for c in self.candidates
            ],
            "winner": fit_to_dict(self.winner),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _score(result: ArimaFit, max_d: int, total: int) -> tuple[float, int]:
    skip = max_d - result.order.d
    loglik = float(np.sum(result.contributions[skip:]))
    return loglik, total - max_d


def auto_arima(
    values: Sequence[float],
    config: Optional[SearchConfig] = None,
    *,
    name: Optional[str] = None,
    origin=None,
) -> SearchReport:
    """Fit every order in the grid and keep the one minimizing the chosen criterion.

    Ties are broken by fewer parameters, then lexicographically by (p, d, q).
    Candidates that fail to fit are reported with their failure status and
    left out of the ranking.
    """
    config = config or SearchConfig()
    x = np.asarray(values, dtype=float)
    fits: dict[ArimaOrder, ArimaFit] = {}
    candidates = []
    for order in config.grid():
        k = param_count(order)
        try:
            result = fit(x, order, config.fit_options, name=name, origin=origin)
            loglik, n = _score(result, config.max_d, len(x))
            crit = all_criteria(loglik, k, n)
        except RicecastError as exc:
            status = _STATUS.get(type(exc), type(exc).__name__)
            candidates.append(Candidate(order, status, k, message=str(exc)))
            continue
        fits[order] = result
        candidates.append(Candidate(order, "ok", k, n, loglik, crit))

    ok = sorted((c for c in candidates if c.ok), key=lambda c: c.sort_key(config.criterion))
    if not ok:
        raise NoViableModel(f"none of the {len(candidates)} candidate orders could be fitted")
    failed = sorted((c for c in candidates if not c.ok), key=lambda c: c.order.triple)
    return SearchReport(config, tuple(ok + failed), fits[ok[0].order])
