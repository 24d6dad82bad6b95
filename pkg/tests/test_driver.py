import numpy as np
import pytest

from waterhammer.core import Phase, reference_scenario
from waterhammer.driver import (
    Recording, joukowsky_surge, oscillation_period_estimate, period_from_samples, run, _step_plan,
)
from waterhammer.core import pressure_of_density, reference_params
from waterhammer.errors import InsufficientDataError, MonitorViolation, ParameterError


def test_reference_run_shape(reference_run):
    tr = reference_run
    assert tr.closure_step == 400
    assert tr.t_close == pytest.approx(0.04)
    assert tr.final.t == pytest.approx(0.8)
    assert tr.final.phase is Phase.POST_CLOSURE
    assert round(tr.final.t / tr.dt) == 8000


def test_snapshot_invariants(reference_run):
    times = reference_run.snapshot_times
    assert all(b > a for a, b in zip(times, times[1:]))
    params = reference_run.scenario.params
    grid = reference_run.scenario.grid
    for s in reference_run.snapshots:
        assert len(s.rho) == len(grid.nodes(s.phase))
        assert np.array_equal(s.p, pressure_of_density(s.rho, params))
        if s.phase is Phase.POST_CLOSURE:
            assert s.v[-1] == 0.0 and s.rho[-1] == s.rho[-2]


def test_one_valve_event(reference_run):
    events = [e for e in reference_run.events if e.kind == "valve-closure"]
    assert len(events) == 1 and events[0].t == pytest.approx(0.04)
    first_post = min(s.t for s in reference_run.snapshots if s.phase is Phase.POST_CLOSURE)
    assert first_post >= events[0].t


def test_uniform_decay_until_closure(reference_run):
    v = reference_run.pre_closure.v
    # away from the reservoir and valve disturbances the state is uniform
    assert v[100] == pytest.approx(1 / (1 + 5 * 0.04), abs=1e-6)
    probe = reference_run.probe(10.0)
    pre = probe.v[probe.t <= 0.04]
    assert np.all(np.diff(pre) <= 0)


def test_constant_state_preserved():
    sc = reference_scenario(c_f=0.0, t_close=10.0, t_end=0.1)
    tr = run(sc)
    assert np.max(np.abs(tr.final.v - 1.0)) <= 1e-12
    assert np.max(np.abs(tr.final.rho - 1000.0)) <= 1e-12 * 1000


def test_determinism():
    sc = reference_scenario(t_end=0.1)
    a, b = run(sc, Recording(probes=(10.0,), stride=7)), run(sc, Recording(probes=(10.0,), stride=7))
    assert np.array_equal(a.final.rho, b.final.rho)
    assert all(np.array_equal(x.v, y.v) for x, y in zip(a.snapshots, b.snapshots))


def test_friction_decay_is_monotone():
    sc = reference_scenario(t_close=1.0, t_end=0.1, dx=0.5)
    tr = run(sc, Recording(stride=1))
    vmax = [np.abs(s.v).max() for s in tr.snapshots]
    assert all(b <= a + 1e-12 for a, b in zip(vmax, vmax[1:]))


def test_monitor_aborts_unstable_run():
    with pytest.raises(MonitorViolation) as info:
        run(reference_scenario(), courant=1.5, enforce_cfl=False)
    assert info.value.step is not None and info.value.t < 0.8


def test_courant_above_one_needs_escape_hatch():
    with pytest.raises(ParameterError):
        run(reference_scenario(), courant=1.5)


def test_partial_last_step():
    assert _step_plan(0.8, 1e-4) == (8000, 0.0)
    n, rem = _step_plan(0.00025, 1e-4)
    assert n == 2 and rem == pytest.approx(5e-5)
    tr = run(reference_scenario(t_end=0.01 + 3e-5, t_close=1.0))
    assert tr.final.t == 0.01 + 3e-5


def test_closure_snap_event():
    tr = run(reference_scenario(t_close=0.04003, t_end=0.05))
    assert tr.closure_step == 400
    assert any(e.kind == "closure-snap" for e in tr.events)


def test_probe_snapping_warns():
    with pytest.warns(UserWarning):
        tr = run(reference_scenario(t_end=0.01), Recording(probes=(3.33,)))
    assert tr.probe(3.33).x_snapped == pytest.approx(3.3)


def test_probe_on_dropped_half_stops_at_closure():
    tr = run(reference_scenario(t_end=0.06), Recording(probes=(30.0,)))
    assert tr.probe(30.0).t.max() <= 0.04 + 1e-12


def test_unknown_scheme():
    with pytest.raises(ParameterError):
        run(reference_scenario(), scheme="magic")


def test_joukowsky():
    p = reference_params()
    assert joukowsky_surge(p, 1.0) == 5e5
    assert joukowsky_surge(p, 0.0) == 0.0
    assert joukowsky_surge(p, -1.0) == -5e5


def test_period_of_sinusoid():
    t = np.arange(0, 1, 1e-3)
    assert period_from_samples(t, np.sin(2 * np.pi * t / 0.2)) == pytest.approx(0.2, abs=1e-3)


def test_period_errors():
    with pytest.raises(InsufficientDataError):
        period_from_samples(np.arange(10.0), np.ones(10))
    with pytest.raises(InsufficientDataError):
        period_from_samples(np.arange(3.0), np.arange(3.0))


def test_reference_period(reference_run):
    period = oscillation_period_estimate(reference_run.probe(10.0), after=0.04)
    assert period == pytest.approx(0.16, rel=0.1)


def test_monitor_checks_initial_data():
    with pytest.raises(MonitorViolation) as info:
        run(reference_scenario(v_init=600.0))
    assert info.value.step == 0
