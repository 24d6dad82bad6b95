import numpy as np
import pytest

from waterhammer.errors import InsufficientDataError, ValidationError
from waterhammer.verify.metrics import oscillation_metrics, pressure_rise, surge_metrics


def test_monotone_step_has_no_overshoot():
    y = np.r_[np.zeros(10), np.linspace(0, 1, 5), np.ones(10)]
    m = oscillation_metrics(y, 1.0, 1.0)
    assert m.overshoot == 0.0 and m.total_variation == pytest.approx(1.0)


def test_square_wave():
    A = 3.0
    periods = 4
    y = np.tile(np.r_[np.zeros(5), np.full(5, A)], periods)
    m = oscillation_metrics(y, A, A)
    assert m.overshoot == 0.0
    # 2A per period, less the half period that is cut at the end
    assert m.total_variation == pytest.approx(2 * A * periods - A)


def test_overshoot_fraction():
    assert oscillation_metrics([0, 1.2, 1.0], 1.0, 2.0).overshoot == pytest.approx(0.1)


def test_empty_series():
    with pytest.raises(InsufficientDataError):
        oscillation_metrics([], 1.0, 1.0)
    with pytest.raises(ValidationError):
        oscillation_metrics([1.0], 1.0, 0.0)


def test_surge_on_reference(reference_run):
    m = surge_metrics(reference_run, 10.0)
    assert 0 <= m.overshoot < 1
    rise = pressure_rise(reference_run, 19.9)
    assert rise == pytest.approx(1000 * 500 * (1 / 1.2), rel=0.2)
