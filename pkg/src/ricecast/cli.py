"""Command-line entry point: ``ricecast <subcommand> ...``.

Exit codes: 0 success, 1 input/parse failure, 2 imputation failure
(leading missing value), 3 no viable model, 4 other estimation failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from datetime import date, timedelta
from pathlib import Path

from . import __version__
from .arima import ArimaOrder, ArimaParams, FitOptions, fit, forecast, simulate
from .arima import io as fitio
from .arima.forecast import ForecastResult
from .diagnose import diagnose_fit
from .errors import LeadingMissing, NoViableModel, ParseError, RicecastError
from .impute import impute_frame
from .ingest import format_table, read_price_csv, write_numeric_csv, write_table
from .select import SearchConfig, auto_arima
from .series import PriceFrame, daily_range

log = logging.getLogger("ricecast")

EXIT_PARSE = 1
EXIT_IMPUTE = 2
EXIT_NO_MODEL = 3
EXIT_MODEL = 4
DEFAULT_HORIZON = 122


class CliError(Exception):
    def __init__(self, message, code=EXIT_PARSE):
        self.code = code
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _order(text: str) -> tuple[int, int, int]:
    try:
        p, d, q = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must look like p,d,q, got {text!r}") from None
    return p, d, q


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip()) if text else ()


def _outdir(args) -> Path:
    path = args.outdir or os.environ.get("RICECAST_OUTDIR")
    if not path:
        raise CliError("no output directory: pass --outdir or set RICECAST_OUTDIR")
    return Path(path)


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def _emit(text: str, output):
    if output:
        _write(Path(output), text)
    else:
        sys.stdout.write(text)


def _load_frame(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    return read_price_csv(text)


def _imputed(args):
    return impute_frame(_load_frame(args.input), allow_nocb=args.allow_nocb)


def _columns(frame, wanted):
    if not wanted:
        return frame.names
    missing = [c for c in wanted if c not in frame.names]
    if missing:
        raise CliError(f"unknown column(s) {missing}; available: {frame.names}")
    return wanted


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        max_p=args.max_p,
        max_d=args.max_d,
        max_q=args.max_q,
        criterion=args.criterion,
        fit_options=FitOptions(enforce_invertibility=not args.no_invertibility),
    )


def _autofit_column(frame, column, config):
    series = frame[column]
    try:
        return auto_arima(series.observed(), config, name=column, origin=series.dates[-1])
    except NoViableModel as exc:
        raise CliError(f"column {column!r}: {exc}", EXIT_NO_MODEL) from None


def forecast_table(results: list[ForecastResult]) -> str:
    """Date + one integer column per forecast, in the reference table layout."""
    origins = {r.origin for r in results}
    if len(origins) != 1 or None in origins:
        raise CliError("forecasts need one shared origin date; pass --origin")
    dates = results[0].dates
    header = ["Date", *(r.name or f"series{i + 1}" for i, r in enumerate(results))]
    return format_table(header, dates, [r.points for r in results])


def forecast_detail_csv(result: ForecastResult) -> str:
    rows = [[d, h, pt, se] for d, h, pt, se in zip(result.dates, result.horizons, result.points, result.std_errors)]
    return write_numeric_csv(["Date", "horizon", "point", "std_error"], rows)


# subcommands


def cmd_impute(args):
    _emit(write_table(_imputed(args)), args.output)


def cmd_fit(args):
    frame = _imputed(args)
    column = _columns(frame, [args.column])[0]
    p, d, q = args.order
    order = ArimaOrder(p, d, q, include_constant=not args.no_constant)
    series = frame[column]
    result = fit(
        series.observed(),
        order,
        FitOptions(enforce_invertibility=not args.no_invertibility),
        name=column,
        origin=series.dates[-1],
    )
    _emit(fitio.dumps(result), args.output)


def cmd_autofit(args):
    frame = _imputed(args)
    out = _outdir(args)
    config = _search_config(args)
    for column in _columns(frame, args.column):
        report = _autofit_column(frame, column, config)
        _write(out / "search" / f"{column}.csv", report.to_csv())
        _write(out / "search" / f"{column}.json", report.to_json())
        _write(out / "fits" / f"{column}.json", fitio.dumps(report.winner))
        print(f"{column}: {report.winner.order} {config.criterion}={report.best.criteria[config.criterion]:.4f}")


def _load_fits(paths, origin):
    fits = []
    for path in paths:
        try:
            f = fitio.load(path)
        except (OSError, ValueError) as exc:
            raise CliError(f"cannot load fit {path}: {exc}") from None
        if origin is not None:
            f = dataclasses.replace(f, origin=origin)
        fits.append(f)
    return fits


def cmd_forecast(args):
    fits = _load_fits(args.fit, args.origin)
    try:
        results = [forecast(f, args.horizon) for f in fits]
    except ValueError as exc:
        raise CliError(str(exc), EXIT_MODEL) from None
    _emit(forecast_table(results), args.output)
    if args.detail_dir:
        for r in results:
            _write(Path(args.detail_dir) / f"{r.name}.csv", forecast_detail_csv(r))


def cmd_diagnose(args):
    for f in _load_fits(args.fit, None):
        if not f.residuals:
            raise CliError(f"fit {f.name!r} carries no residuals to diagnose")
        rep = diagnose_fit(f, lags=args.lags)
        if args.outdir or os.environ.get("RICECAST_OUTDIR"):
            out = _outdir(args) / "diagnostics"
            _write(out / f"{f.name}.json", rep.to_json())
            _write(out / f"{f.name}_acf.csv", rep.acf_csv())
            _write(out / f"{f.name}_hist.csv", rep.histogram_csv())
        lb = rep.ljung_box
        print(f"{f.name}: Ljung-Box Q={lb.statistic:.4f} df={lb.df} p={lb.p_value:.4f}")


def cmd_report(args):
    out = _outdir(args)
    frame = _imputed(args)
    config = _search_config(args)
    columns = _columns(frame, args.column)
    _write(out / "imputed.csv", write_table(frame))
    results = []
    for column in columns:
        sub = PriceFrame(frame.calendar, (frame[column],))
        _write(out / "imputed" / f"{column}.csv", write_table(sub))
        report = _autofit_column(frame, column, config)
        winner = report.winner
        _write(out / "search" / f"{column}.csv", report.to_csv())
        _write(out / "search" / f"{column}.json", report.to_json())
        _write(out / "fits" / f"{column}.json", fitio.dumps(winner))
        diag = diagnose_fit(winner)
        _write(out / "diagnostics" / f"{column}.json", diag.to_json())
        _write(out / "diagnostics" / f"{column}_acf.csv", diag.acf_csv())
        _write(out / "diagnostics" / f"{column}_hist.csv", diag.histogram_csv())
        fc = forecast(winner, args.horizon)
        _write(out / "forecast" / f"{column}.csv", forecast_detail_csv(fc))
        results.append(fc)
        log.info("%s: %s", column, winner.order)
    _write(out / "forecast.csv", forecast_table(results))
    run = {
        "version": __version__,
        "input": Path(args.input).name,
        "horizon": args.horizon,
        "seed": args.seed,
        "criterion": config.criterion,
        "max_p": config.max_p,
        "max_d": config.max_d,
        "max_q": config.max_q,
        "invertibility": not args.no_invertibility,
        "allow_nocb": args.allow_nocb,
        "columns": columns,
    }
    _write(out / "run.json", json.dumps(run, indent=2) + "\n")


def cmd_simulate(args):
    p, d, q = args.order
    order = ArimaOrder(p, d, q, include_constant=True)
    params = ArimaParams(args.mean, args.ar, args.ma, args.sigma2)
    values = simulate(order, params, args.n, args.seed)
    start = args.start
    dates = daily_range(start, start + timedelta(days=args.n - 1))
    _emit(write_numeric_csv(["Date", args.name], [[dt, float(v)] for dt, v in zip(dates, values)]), args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ricecast", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_args(sp):
        sp.add_argument("--input", required=True, help="price CSV (Date + value columns)")
        sp.add_argument("--allow-nocb", action="store_true", help="fill a leading gap backward instead of failing")

    def search_args(sp):
        sp.add_argument("--criterion", choices=["aic", "aicc", "bic"], default="aicc")
        sp.add_argument("--max-p", type=int, default=5)
        sp.add_argument("--max-d", type=int, default=2)
        sp.add_argument("--max-q", type=int, default=5)
        sp.add_argument("--no-invertibility", action="store_true")

    sp = sub.add_parser("impute", help="complete the calendar and carry observations forward")
    data_args(sp)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_impute)

    sp = sub.add_parser("fit", help="fit one ARIMA order to one column")
    data_args(sp)
    sp.add_argument("--column", required=True)
    sp.add_argument("--order", type=_order, default=(0, 0, 5))
    sp.add_argument("--no-constant", action="store_true")
    sp.add_argument("--no-invertibility", action="store_true")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("autofit", help="information-criterion order search per column")
    data_args(sp)
    search_args(sp)
    sp.add_argument("--column", action="append")
    sp.add_argument("--outdir")
    sp.set_defaults(func=cmd_autofit)

    sp = sub.add_parser("forecast", help="forecast from saved fit documents")
    sp.add_argument("--fit", action="append", required=True)
    sp.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    sp.add_argument("--origin", type=date.fromisoformat, help="last in-sample date, overriding the fit's")
    sp.add_argument("--output")
    sp.add_argument("--detail-dir", help="also write per-series point/std-error CSVs here")
    sp.set_defaults(func=cmd_forecast)

    sp = sub.add_parser("diagnose", help="residual ACF, Ljung-Box and histogram for saved fits")
    sp.add_argument("--fit", action="append", required=True)
    sp.add_argument("--lags", type=int)
    sp.add_argument("--outdir")
    sp.set_defaults(func=cmd_diagnose)

    sp = sub.add_parser("report", help="impute, autofit, diagnose and forecast every column")
    data_args(sp)
    search_args(sp)
    sp.add_argument("--column", action="append")
    sp.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--outdir")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("simulate", help="draw a synthetic series from an ARIMA model")
    sp.add_argument("--order", type=_order, default=(0, 0, 0))
    sp.add_argument("--mean", type=float, default=0.0)
    sp.add_argument("--ar", type=_floats, default=())
    sp.add_argument("--ma", type=_floats, default=())
    sp.add_argument("--sigma2", type=float, default=1.0)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--start", type=date.fromisoformat, default=date(2020, 1, 1))
    sp.add_argument("--name", default="value")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "horizon", 1) < 1:
        parser.error("--horizon must be at least 1")
    try:
        args.func(args)
    except CliError as exc:
        print(f"ricecast: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"ricecast: {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LeadingMissing as exc:
        print(f"ricecast: {exc}", file=sys.stderr)
        return EXIT_IMPUTE
    except NoViableModel as exc:
        print(f"ricecast: {exc}", file=sys.stderr)
        return EXIT_NO_MODEL
    except (RicecastError, ValueError) as exc:
        print(f"ricecast: {exc}", file=sys.stderr)
        return EXIT_MODEL
    return 0


if __name__ == "__main__":
    sys.exit(main())
