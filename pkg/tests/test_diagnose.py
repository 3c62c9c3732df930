import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_acf, chi2_sf_quadrature
from ricecast.diagnose import acf, chi_square_sf, default_lags, diagnose_residuals, ljung_box
from ricecast.errors import DegenerateVariance, DegreesOfFreedom, TooShort


def test_acf_alternating():
    r = acf([1.0, -1.0, 1.0, -1.0], 1)
    assert r[0] == 1.0
    assert r[1] == pytest.approx(-0.75, abs=1e-15)


@settings(max_examples=50)
@given(st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=60), st.integers(0, 2))
def test_acf_matches_brute_force(xs, lag):
    if max(xs) - min(xs) < 1e-3:
        return
    got = acf(xs, lag)
    ref = brute_acf(xs, lag)
    assert np.allclose(got, ref, rtol=0, atol=1e-12)


def test_acf_errors():
    with pytest.raises(DegenerateVariance):
        acf([2.0] * 10, 3)
    with pytest.raises(TooShort):
        acf([1.0, 2.0], 2)


def test_ljung_box_hand_example():
    x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
    r = brute_acf(x, 2)
    q = 6 * 8 * (r[1] ** 2 / 5 + r[2] ** 2 / 4)
    lb = ljung_box(x, 2)
    assert lb.statistic == pytest.approx(q, rel=1e-14)
    assert lb.df == 2
    assert lb.p_value == pytest.approx(math.exp(-q / 2), rel=1e-12)


def test_ljung_box_white_acf_gives_unit_pvalue():
    # lag-1 and lag-2 autocorrelations vanish by construction
    x = [1.0, 0.0, 0.0, -1.0, 0.0, 0.0]
    assert acf(x, 1)[1] == 0.0
    lb = ljung_box(x, 1)
    assert lb.statistic == 0.0 and lb.p_value == 1.0


def test_degrees_of_freedom():
    with pytest.raises(DegreesOfFreedom):
        ljung_box(np.arange(20.0), 5, fitdf=5)
    assert default_lags(958, 5) == 10
    assert default_lags(20, 5) == 6


def test_sf_known_values():
    assert chi_square_sf(2.0, 2) == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert chi_square_sf(0.0, 3) == 1.0
    assert chi_square_sf(3.7, 5) == pytest.approx(0.5933639617818081, abs=1e-12)


@given(st.floats(0.01, 200.0), st.integers(1, 40))
@settings(max_examples=60, deadline=None)
def test_sf_matches_quadrature(x, df):
    assert chi_square_sf(x, df) == pytest.approx(chi2_sf_quadrature(x, df), abs=1e-8)


@given(st.floats(0, 100), st.floats(0, 100), st.integers(1, 30))
def test_sf_monotone(a, b, df):
    lo, hi = sorted((a, b))
    assert chi_square_sf(lo, df) >= chi_square_sf(hi, df)


@pytest.mark.slow
def test_null_pvalues_roughly_uniform():
    rng = np.random.default_rng(2024)
    hits = sum(ljung_box(rng.normal(size=5000), 10).p_value < 0.05 for _ in range(200))
    assert 0.01 <= hits / 200 <= 0.10


def test_report_contents():
    rng = np.random.default_rng(1)
    rep = diagnose_residuals(rng.normal(size=300), fitdf=2, name="w")
    assert len(rep.acf_values) == 21 and rep.acf_values[0] == 1.0
    assert sum(rep.counts) == 300 and len(rep.bin_edges) == 21
    assert rep.ljung_box.df == 8
    csv = rep.histogram_csv().splitlines()
    assert csv[0] == "bin_center,count" and len(csv) == 21
    assert rep.acf_csv().splitlines()[1] == "0,1.0"
    assert '"p_value"' in rep.to_json()
