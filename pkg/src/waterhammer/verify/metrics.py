"""Overshoot and total variation of probe signals after the valve closes."""

from dataclasses import dataclass

import numpy as np

from ..driver import joukowsky_surge
from ..errors import InsufficientDataError, ValidationError


@dataclass(frozen=True)
class OscillationMetrics:
    overshoot: float
    total_variation: float


def _signal(series):
    y = getattr(series, "p", series)
    y = np.asarray(y, dtype=float)
    if y.size == 0:
        raise InsufficientDataError("empty series")
    return y


def oscillation_metrics(series, plateau, amplitude):
    """Overshoot (max - plateau)/|amplitude| and total variation sum|dy|.

    ``series`` is an array or a probe series (its pressure is used).
    """
    y = _signal(series)
    if amplitude == 0:
        raise ValidationError("amplitude must be non-zero")
    overshoot = max(0.0, float((y.max() - plateau) / abs(amplitude)))
    return OscillationMetrics(overshoot, float(np.sum(np.abs(np.diff(y)))))


def post_closure_window(trajectory, x):
    """(t, p) of the probe at ``x`` from the closure on, plus the probe."""
    if trajectory.closure_step is None:
        raise ValidationError("trajectory has no valve closure")
    series = trajectory.probe(x)
    keep = series.t >= trajectory.t_close
    if not keep.any():
        raise InsufficientDataError(f"no post-closure samples at x={x!r}")
    return series.t[keep], series.p[keep], series


def surge_metrics(trajectory, x):
    """Metrics of the pressure probe at ``x`` after closure.

    The plateau is the pressure at the probe when the valve shuts plus the
    Joukowsky rise for the velocity the probe carried then.
    """
    t, p, series = post_closure_window(trajectory, x)
    pre = trajectory.pre_closure
    v_then = float(pre.v[series.node])
    amplitude = joukowsky_surge(trajectory.scenario.params, v_then)
    return oscillation_metrics(p, float(p[0]) + amplitude, amplitude)


def pressure_rise(trajectory, x):
    """Peak post-closure pressure minus the probe pressure at closure."""
    t, p, _ = post_closure_window(trajectory, x)
    return float(p.max() - p[0])
