from datetime import date, timedelta

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ricecast.errors import EmptySeries
from ricecast.series import CalendarSeries, PriceFrame, complete_calendar


def _series(days, values, name="x"):
    return CalendarSeries(name, tuple(days), tuple(values))


def test_inserts_weekend_gap_as_missing():
    days = [date(2020, 1, 3), date(2020, 1, 6)]
    out = complete_calendar(_series(days, [9850.0, 10000.0]))
    assert out.dates == tuple(date(2020, 1, d) for d in range(3, 7))
    assert out.values == (9850.0, None, None, 10000.0)


def test_contiguous_and_single_are_unchanged():
    days = [date(2021, 5, 1) + timedelta(days=i) for i in range(4)]
    s = _series(days, [1.0, None, 3.0, 4.0])
    assert complete_calendar(s) == s
    one = _series([date(2021, 5, 1)], [5.0])
    assert complete_calendar(one) == one


def test_empty_series_raises():
    with pytest.raises(EmptySeries):
        complete_calendar(_series([], []))


@pytest.mark.parametrize(
    "days, values",
    [
        ([date(2020, 1, 2), date(2020, 1, 1)], [1.0, 2.0]),
        ([date(2020, 1, 1), date(2020, 1, 1)], [1.0, 2.0]),
        ([date(2020, 1, 1)], [1.0, 2.0]),
        ([date(2020, 1, 1)], [-3.0]),
        ([date(2020, 1, 1)], [float("nan")]),
    ],
)
def test_invariants_enforced(days, values):
    with pytest.raises(ValueError):
        _series(days, values)


def test_frame_rejects_misaligned_and_duplicate_columns():
    cal = (date(2020, 1, 1), date(2020, 1, 2))
    a = CalendarSeries("a", cal, (1.0, 2.0))
    b = CalendarSeries("b", cal[:1], (1.0,))
    with pytest.raises(ValueError):
        PriceFrame(cal, (a, b))
    with pytest.raises(ValueError):
        PriceFrame(cal, (a, a))


@st.composite
def sparse_series(draw):
    start = date(2019, 12, 31)
    offsets = sorted(draw(st.sets(st.integers(0, 60), min_size=1, max_size=25)))
    values = draw(st.lists(st.one_of(st.none(), st.floats(1.0, 1e5)), min_size=len(offsets), max_size=len(offsets)))
    return _series([start + timedelta(days=o) for o in offsets], values)


@given(sparse_series())
def test_completion_properties(s):
    out = complete_calendar(s)
    assert len(out) == (s.dates[-1] - s.dates[0]).days + 1
    assert complete_calendar(out) == out
    lookup = dict(zip(out.dates, out.values))
    for d, v in zip(s.dates, s.values):
        assert lookup[d] == v
    inserted = set(out.dates) - set(s.dates)
    assert all(lookup[d] is None for d in inserted)
