"""JSON documents for fitted models.

Only ``order``, ``mean``, ``ar`` and ``ma`` are required on read, so a model
written down from printed coefficients loads as well as one produced by
:func:`ricecast.arima.fit`.
"""

from __future__ import annotations

import dataclasses
import json
from datetime import date
from pathlib import Path

from .model import ArimaFit, ArimaOrder, ArimaParams


def fit_to_dict(fit: ArimaFit) -> dict:
    o, prm = fit.order, fit.params
    doc = {
        "name": fit.name,
        "order": {"p": o.p, "d": o.d, "q": o.q, "constant": o.include_constant},
        "mean": prm.mean,
        "ar": list(prm.ar),
        "ma": list(prm.ma),
        "sigma2": prm.sigma2,
        "loglik": fit.loglik,
        "nobs": fit.nobs,
        "criteria": dict(fit.criteria) if fit.criteria else None,
        "origin": fit.origin.isoformat() if fit.origin else None,
        "residuals": list(fit.residuals),
        "history": list(fit.history),
    }
    return doc


def fit_from_dict(doc: dict) -> ArimaFit:
    try:
        od = doc["order"]
        order = ArimaOrder(int(od["p"]), int(od["d"]), int(od["q"]), bool(od.get("constant", True)))
        params = ArimaParams(
            mean=float(doc["mean"]),
            ar=tuple(doc.get("ar", ())),
            ma=tuple(doc.get("ma", ())),
            sigma2=None if doc.get("sigma2") is None else float(doc["sigma2"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed fit document: {exc}") from None
    origin = doc.get("origin")
    return ArimaFit(
        order=order,
        params=params,
        loglik=doc.get("loglik"),
        nobs=int(doc.get("nobs") or 0),
        criteria=doc.get("criteria"),
        residuals=tuple(doc.get("residuals") or ()),
        history=tuple(doc.get("history") or ()),
        origin=date.fromisoformat(origin) if origin else None,
        name=doc.get("name"),
    )


def dumps(fit: ArimaFit) -> str:
    return json.dumps(fit_to_dict(fit), indent=2) + "\n"


def loads(text: str) -> ArimaFit:
    return fit_from_dict(json.loads(text))


def load(path) -> ArimaFit:
    fit = loads(Path(path).read_text(encoding="utf-8"))
    if fit.name is None:
        fit = dataclasses.replace(fit, name=Path(path).stem)
    return fit
