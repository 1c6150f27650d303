"""Scaling-law planner: frozen oracle values and shape properties."""

import pytest
from hypothesis import given, strategies as st

from calltriage.errors import DomainError
from calltriage.scaling import predict_wer


def test_unit_inputs_give_coefficient():
    assert predict_wer(1, 1) == 158.06


def test_reference_operating_point():
    # frozen from independent evaluation: 158.06 * 769**-0.255 * 42.58**-0.269
    assert predict_wer(769, 42.58) == pytest.approx(10.584112300477312, rel=1e-12)


def test_doubling_data_ratio():
    ratio = predict_wer(100, 20) / predict_wer(100, 10)
    assert ratio == pytest.approx(2 ** -0.269, abs=1e-9)


def test_doubling_model_ratio():
    ratio = predict_wer(200, 10) / predict_wer(100, 10)
    assert ratio == pytest.approx(2 ** -0.255, abs=1e-9)


@pytest.mark.parametrize("m,d", [(0, 1), (1, 0), (-5, 10), (10, -1)])
def test_non_positive_inputs_rejected(m, d):
    with pytest.raises(DomainError):
        predict_wer(m, d)


@given(
    st.floats(min_value=0.1, max_value=1e5),
    st.floats(min_value=0.1, max_value=1e5),
    st.floats(min_value=1.01, max_value=10),
)
def test_strictly_decreasing_in_both_arguments(m, d, factor):
    base = predict_wer(m, d)
    assert predict_wer(m * factor, d) < base
    assert predict_wer(m, d * factor) < base
