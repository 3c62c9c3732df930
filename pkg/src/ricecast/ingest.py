"""CSV reading and table writing for daily price frames.

The format is plain comma-separated UTF-8 with a mandatory header whose
first column holds ISO-8601 dates. Prices are written as whole rupiah,
rounded half away from zero; missing cells are written as ``NA``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from datetime import date
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Optional, Sequence

from .errors import DuplicateDate, ParseError, UnsortedInput
from .series import PriceFrame

DEFAULT_COLUMNS = ("BKB1", "BKB2", "BKM1", "BKM2", "BKS1", "BKS2")
MISSING = "NA"


@dataclass(frozen=True)
class CsvSchema:
    date_column: str = "Date"
    value_columns: tuple[str, ...] = DEFAULT_COLUMNS
    missing_tokens: frozenset[str] = field(default_factory=lambda: frozenset({"NA", ""}))

    def __post_init__(self):
        object.__setattr__(self, "value_columns", tuple(self.value_columns))
        object.__setattr__(self, "missing_tokens", frozenset(self.missing_tokens))
        if self.date_column in self.value_columns:
            raise ValueError(f"date column {self.date_column!r} clashes with a value column")
        if not self.missing_tokens:
            raise ValueError("missing_tokens must not be empty")
        if len(set(self.value_columns)) != len(self.value_columns):
            raise ValueError("value column names must be unique")

    @classmethod
    def from_header(cls, header: Sequence[str], **kwargs) -> "CsvSchema":
        if not header:
            raise ParseError("empty header", row=1)
        return cls(date_column=header[0], value_columns=tuple(header[1:]), **kwargs)


def round_half_away(x: float) -> int:
    """Round to the nearest integer, ties away from zero.

    Goes through the shortest decimal repr so that e.g. 11387.5 -> 11388
    and -2.5 -> -3 regardless of binary representation quirks.
    """
    if not math.isfinite(x):
        raise ValueError(f"cannot round non-finite value {x!r}")
    return int(Decimal(repr(float(x))).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def _parse_date(text: str, row: int) -> date:
    try:
        if len(text) != 10:
            raise ValueError
        return date.fromisoformat(text)
    except ValueError:
        raise ParseError(f"malformed date {text!r}", row=row) from None


def _parse_price(text: str, row: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"non-numeric cell {text!r}", row=row, column=column) from None
    if not math.isfinite(value) or value <= 0:
        raise ParseError(f"price must be finite and positive, got {text!r}", row=row, column=column)
    return value


def read_price_csv(text: str | io.TextIOBase, schema: CsvSchema | None = None) -> PriceFrame:
    """Parse a price CSV into a :class:`PriceFrame`.

    If ``schema`` is None the column layout is taken from the header.
    Rows need not be calendar-contiguous but must be strictly increasing.
    """
    if not isinstance(text, str):
        text = text.read()
    records = list(csv.reader(io.StringIO(text)))
    if not records:
        raise ParseError("missing header row", row=1)
    if any("\t" in h for h in records[0]):
        raise ParseError("tab-separated input is not supported; use commas", row=1)
    header = [h.strip() for h in records[0]]
    if schema is None:
        schema = CsvSchema.from_header(header)
    expected = [schema.date_column, *schema.value_columns]
    if header != expected:
        raise ParseError(f"header {header!r} does not match expected {expected!r}", row=1)

    ncol = len(expected)
    dates: list[date] = []
    cells: list[list[Optional[float]]] = [[] for _ in schema.value_columns]
    for lineno, rec in enumerate(records[1:], start=2):
        if not rec:
            continue
        if len(rec) != ncol:
            raise ParseError(f"expected {ncol} fields, got {len(rec)}", row=lineno)
        day = _parse_date(rec[0].strip(), lineno)
        if dates:
            if day == dates[-1]:
                raise DuplicateDate(f"duplicate date {day}", row=lineno)
            if day < dates[-1]:
                raise UnsortedInput(f"date {day} precedes {dates[-1]}", row=lineno)
        dates.append(day)
        for j, (col, raw) in enumerate(zip(schema.value_columns, rec[1:])):
            raw = raw.strip()
            if raw in schema.missing_tokens:
                cells[j].append(None)
            else:
                cells[j].append(_parse_price(raw, lineno, col))
    return PriceFrame.from_columns(dates, dict(zip(schema.value_columns, cells)))


def format_cell(value: Optional[float]) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return MISSING
    return str(round_half_away(value))


def format_table(
    header: Sequence[str], dates: Sequence[date], columns: Sequence[Sequence[Optional[float]]]
) -> str:
    """Render a Date-first table with integer-rounded cells and LF endings."""
    lines = [",".join(header)]
    for i, day in enumerate(dates):
        lines.append(",".join([day.isoformat(), *(format_cell(col[i]) for col in columns)]))
    return "\n".join(lines) + "\n"


def write_table(frame: PriceFrame, date_column: str = "Date") -> str:
    return format_table(
        [date_column, *frame.names], frame.calendar, [c.values for c in frame.columns]
    )


def write_numeric_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """Full-precision CSV used for plot-ready diagnostic and forecast detail."""
    lines = [",".join(header)]
    for row in rows:
        out = []
        for v in row:
            if isinstance(v, float):
                out.append(MISSING if math.isnan(v) else repr(v))
            elif isinstance(v, date):
                out.append(v.isoformat())
            else:
                out.append(str(v))
        lines.append(",".join(out))
    return "\n".join(lines) + "\n"
