"""Sign/log-magnitude scalar arithmetic against plain float arithmetic."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from retroflow.logdomain import LOG_ZERO, LogAmplitude, log_add, log_sum


def test_zero_encoding():
    z = LogAmplitude.from_linear(0.0)
    assert z.sign == 0
    assert z.log_mag == LOG_ZERO
    assert z.to_linear() == 0.0


def test_roundtrip_simple_values():
    # relative roundtrip error grows like |log(v)| * ulp
    for v in (1.0, -2.5, 3e-120, -7e200):
        back = LogAmplitude.from_linear(v).to_linear()
        assert back == pytest.approx(v, rel=1e-13)


def test_invalid_sign_rejected():
    with pytest.raises(ValueError):
        LogAmplitude(2, 0.0)


def test_nonfinite_log_rejected():
    with pytest.raises(ValueError):
        LogAmplitude(1, math.inf)
    with pytest.raises(ValueError):
        LogAmplitude(1, math.nan)


def test_overflow_decodes_to_inf():
    assert LogAmplitude(1, 1000.0).to_linear() == math.inf
    assert LogAmplitude(-1, 1000.0).to_linear() == -math.inf


def test_exact_cancellation():
    a = LogAmplitude.from_linear(3.25)
    assert log_add(a, -a).sign == 0


def test_near_total_cancellation_snaps_to_zero():
    a = LogAmplitude(1, 100.0)
    b = LogAmplitude(-1, 100.0 + 1e-320)
    assert log_add(a, b).sign == 0


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False).filter(
    lambda v: v == 0.0 or abs(v) > 1e-6
)


@settings(max_examples=300, deadline=None)
@given(finite, finite)
def test_log_add_matches_float_addition(x, y):
    got = log_add(LogAmplitude.from_linear(x), LogAmplitude.from_linear(y)).to_linear()
    want = x + y
    biggest = max(abs(x), abs(y))
    if want == 0.0 or abs(want) < 1e-9 * biggest:
        # catastrophic cancellation: only the magnitude bound is meaningful
        assert abs(got) <= biggest * 1e-8
    else:
        # precision degrades with the cancellation ratio
        assert got == pytest.approx(want, rel=1e-12 + 1e-13 * biggest / abs(want))


@settings(max_examples=100, deadline=None)
@given(st.lists(finite, min_size=1, max_size=12))
def test_log_sum_matches_fsum(values):
    got = log_sum(LogAmplitude.from_linear(v) for v in values).to_linear()
    want = math.fsum(values)
    biggest = max(abs(v) for v in values)
    if want == 0.0 or abs(want) < 1e-9 * biggest:
        assert abs(got) <= biggest * 1e-8
    else:
        assert got == pytest.approx(want, rel=1e-12 + 1e-12 * biggest / abs(want))


def test_scaled_and_times():
    a = LogAmplitude.from_linear(-1.5)
    assert a.scaled(-2.0).to_linear() == pytest.approx(3.0, rel=1e-15)
    assert a.times(a).to_linear() == pytest.approx(2.25, rel=1e-15)
    assert a.scaled(0.0).sign == 0
