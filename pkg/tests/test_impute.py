from datetime import date, timedelta

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_locf
from ricecast.errors import LeadingMissing
from ricecast.impute import impute_frame, locf
from ricecast.ingest import read_price_csv, write_table
from ricecast.series import CalendarSeries


def _series(values, name="s"):
    start = date(2019, 12, 31)
    return CalendarSeries(name, tuple(start + timedelta(days=i) for i in range(len(values))), tuple(values))


def test_carries_previous_day():
    out = locf(_series([9850.0, None, 9850.0]))
    assert out.values == (9850.0, 9850.0, 9850.0)


def test_leading_missing_is_an_error():
    with pytest.raises(LeadingMissing) as info:
        locf(_series([None, 1.0], name="BKB1"))
    assert info.value.column == "BKB1"


def test_complete_series_unchanged():
    s = _series([1.0, 2.0, 3.0])
    assert locf(s) == s


def test_head_matches_reference(read_data):
    out = write_table(impute_frame(read_price_csv(read_data("raw_head.csv"))))
    assert out.splitlines()[:7] == read_data("imputed_head.csv").splitlines()


def test_tail_matches_reference(read_data):
    out = write_table(impute_frame(read_price_csv(read_data("raw_tail.csv"))))
    assert out.splitlines()[-6:] == read_data("imputed_tail.csv").splitlines()[1:]


def test_frame_error_names_column():
    frame = read_price_csv("Date,A,B\n2020-01-01,1,NA\n2020-01-02,1,2\n")
    with pytest.raises(LeadingMissing, match="'B'"):
        impute_frame(frame)
    assert impute_frame(frame, allow_nocb=True)["B"].values == (2.0, 2.0)


masked = st.lists(st.one_of(st.none(), st.floats(1.0, 1e5)), min_size=1, max_size=60).filter(lambda v: v[0] is not None)


@given(masked)
def test_locf_properties(values):
    s = _series(values)
    out = locf(s)
    assert list(out.values) == brute_locf(values)
    assert locf(out) == out
    assert out.is_complete()
    for a, b in zip(values, out.values):
        if a is not None:
            assert a == b
    # every value inside a missing run equals the value just before the run
    for i, v in enumerate(values):
        if v is None:
            j = max(k for k in range(i) if values[k] is not None)
            assert out.values[i] == values[j]
