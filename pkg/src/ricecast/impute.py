"""Last-observation-carried-forward imputation on a completed daily calendar."""

from __future__ import annotations

from .errors import LeadingMissing
from .series import CalendarSeries, PriceFrame, complete_calendar, complete_frame_calendar


def locf(series: CalendarSeries) -> CalendarSeries:
    """Replace each missing value with the nearest preceding observed value.

    Raises LeadingMissing if the series starts with a gap; there is nothing
    to carry in that case.
    """
    if len(series) and series.values[0] is None:
        raise LeadingMissing(series.name)
    out = []
    last = None
    for v in series.values:
        if v is not None:
            last = v
        out.append(last)
    return series.with_values(out)


def nocb_leading(series: CalendarSeries) -> CalendarSeries:
    """Fill only a leading gap with the first observed value (opt-in)."""
    values = list(series.values)
    first = next((i for i, v in enumerate(values) if v is not None), None)
    if first is None:
        raise LeadingMissing(series.name)
    for i in range(first):
        values[i] = values[first]
    return series.with_values(values)


def impute_series(series: CalendarSeries, allow_nocb: bool = False) -> CalendarSeries:
    completed = complete_calendar(series)
    if allow_nocb:
        completed = nocb_leading(completed)
    return locf(completed)


def impute_frame(frame: PriceFrame, allow_nocb: bool = False) -> PriceFrame:
    """Complete the calendar, then carry observations forward column by column."""
    completed = complete_frame_calendar(frame)
    if allow_nocb:
        completed = completed.map_columns(nocb_leading)
    return completed.map_columns(locf)
