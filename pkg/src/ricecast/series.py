"""Calendar-indexed daily price series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import Iterable, Optional, Sequence

from .errors import EmptySeries

ONE_DAY = timedelta(days=1)


@dataclass(frozen=True)
class CalendarSeries:
    """A named daily series of optional prices.

    ``None`` marks a missing observation. Dates must be strictly increasing
    and every present value must be a finite positive number.
    """

    name: str
    dates: tuple[date, ...]
    values: tuple[Optional[float], ...]

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(
            self, "values", tuple(None if v is None else float(v) for v in self.values)
        )
        if len(self.dates) != len(self.values):
            raise ValueError(
                f"{self.name}: {len(self.dates)} dates but {len(self.values)} values"
            )
        for a, b in zip(self.dates, self.dates[1:]):
            if not a < b:
                raise ValueError(f"{self.name}: dates not strictly increasing at {b}")
        for d, v in zip(self.dates, self.values):
            if v is not None and not (math.isfinite(v) and v > 0):
                raise ValueError(f"{self.name}: invalid price {v!r} at {d}")

    def __len__(self):
        return len(self.dates)

    @property
    def missing_count(self) -> int:
        return sum(v is None for v in self.values)

    def is_complete(self) -> bool:
        return self.missing_count == 0

    def observed(self) -> list[float]:
        """Values as floats; raises if any is missing."""
        if not self.is_complete():
            raise ValueError(f"{self.name}: series has {self.missing_count} missing values")
        return list(self.values)  # type: ignore[arg-type]

    def with_values(self, values: Iterable[Optional[float]]) -> "CalendarSeries":
        return CalendarSeries(self.name, self.dates, tuple(values))


@dataclass(frozen=True)
class PriceFrame:
    """Several CalendarSeries sharing one calendar."""

    calendar: tuple[date, ...]
    columns: tuple[CalendarSeries, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "calendar", tuple(self.calendar))
        object.__setattr__(self, "columns", tuple(self.columns))
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate column names: {names}")
        for col in self.columns:
            if col.dates != self.calendar:
                raise ValueError(f"column {col.name!r} is not aligned to the frame calendar")

    @classmethod
    def from_columns(
        cls, calendar: Sequence[date], columns: dict[str, Sequence[Optional[float]]]
    ) -> "PriceFrame":
        cal = tuple(calendar)
        return cls(cal, tuple(CalendarSeries(name, cal, vals) for name, vals in columns.items()))

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    def __len__(self):
        return len(self.calendar)

    def __getitem__(self, name: str) -> CalendarSeries:
        for col in self.columns:
            if col.name == name:
                return col
        raise KeyError(name)

    def map_columns(self, func) -> "PriceFrame":
        """Apply a series -> series function to every column."""
        cols = tuple(func(c) for c in self.columns)
        calendar = cols[0].dates if cols else self.calendar
        return PriceFrame(calendar, cols)


def daily_range(first: date, last: date) -> list[date]:
    n = (last - first).days
    return [first + timedelta(days=i) for i in range(n + 1)]


def complete_calendar(series: CalendarSeries) -> CalendarSeries:
    """Insert every absent day between the first and last date as missing."""
    if len(series) == 0:
        raise EmptySeries(f"{series.name}: cannot complete the calendar of an empty series")
    calendar = daily_range(series.dates[0], series.dates[-1])
    if len(calendar) == len(series):
        return series
    lookup = dict(zip(series.dates, series.values))
    return CalendarSeries(series.name, tuple(calendar), tuple(lookup.get(d) for d in calendar))


def complete_frame_calendar(frame: PriceFrame) -> PriceFrame:
    if len(frame.calendar) == 0:
        raise EmptySeries("cannot complete the calendar of an empty frame")
    if not frame.columns:
        return PriceFrame(tuple(daily_range(frame.calendar[0], frame.calendar[-1])), ())
    return frame.map_columns(complete_calendar)
