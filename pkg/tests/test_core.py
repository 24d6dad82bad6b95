import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from waterhammer.core import (
    FluidParams, Grid, Phase, State, check_monitor, pressure_of_density, reference_params,
    reference_scenario, sound_speed,
)
from waterhammer.errors import DomainError, GridError, ParameterError


def test_pressure_examples():
    p = reference_params()
    assert pressure_of_density(1000.0, p) == pytest.approx(1.01e5, rel=1e-15)
    assert pressure_of_density(1002.0, p) == pytest.approx(1.01e5 + 2.5e8 * 2 / 1000, rel=1e-14)
    assert pressure_of_density(998.0, p) == pytest.approx(-3.99e5, rel=1e-14)


def test_pressure_rejects_nonpositive_density():
    with pytest.raises(DomainError):
        pressure_of_density(0.0, reference_params())
    with pytest.raises(DomainError):
        pressure_of_density(np.array([1000.0, -1.0]), reference_params())


def test_pressure_scalar_and_array():
    p = reference_params()
    assert isinstance(pressure_of_density(1000.0, p), float)
    assert pressure_of_density(np.full(3, 1000.0), p).shape == (3,)


@given(st.floats(500, 1500), st.floats(500, 1500))
def test_pressure_is_affine(r1, r2):
    p = reference_params()
    lhs = pressure_of_density(r1, p) - pressure_of_density(r2, p)
    assert lhs == pytest.approx(p.K * (r1 - r2) / p.rho_a, abs=1e-9 * p.K)


def test_sound_speed_examples():
    assert sound_speed(reference_params()) == 500.0
    assert sound_speed(FluidParams(K=7.0, rho_a=7.0, p_a=0.0, c_f=0.0, D=1.0)) == 1.0
    assert sound_speed(FluidParams(K=4.0, rho_a=1.0, p_a=0.0, c_f=0.0, D=1.0)) == 2.0


def test_friction_coefficient():
    assert reference_params().friction == 5.0


@pytest.mark.parametrize("field", ["K", "rho_a", "D"])
def test_params_reject_nonpositive(field):
    kwargs = dict(K=2.5e8, rho_a=1000.0, p_a=1.01e5, c_f=2.0, D=0.2)
    kwargs[field] = 0.0
    with pytest.raises(ParameterError):
        FluidParams(**kwargs)


def test_params_reject_negative_friction():
    with pytest.raises(ParameterError):
        FluidParams(K=1.0, rho_a=1.0, p_a=0.0, c_f=-1.0, D=1.0)


def test_grid_reference():
    g = Grid(20.0, 0.1)
    assert g.n_half == 200
    assert g.valve_index == 200
    assert g.n_nodes_full == 401
    assert g.nodes(Phase.PRE_CLOSURE)[200] == 20.0
    assert len(g.nodes(Phase.POST_CLOSURE)) == 201


@given(st.integers(2, 2000), st.sampled_from([0.1, 0.05, 0.3, 0.7, 1.0 / 3.0]))
def test_grid_valve_node_is_exact(n, dx):
    g = Grid(n * dx, dx)
    x = g.nodes()
    assert abs(x[g.valve_index] - n * dx) <= 1e-12 * n * dx
    assert len(x) == 2 * n + 1


@pytest.mark.parametrize("L, dx", [(20.0, 0.3), (20.0, 15.0), (20.0, 0.0), (-1.0, 0.1)])
def test_grid_rejects(L, dx):
    with pytest.raises(GridError):
        Grid(L, dx)


def test_grid_snap():
    g = Grid(20.0, 0.1)
    assert g.snap(3.33) == (33, pytest.approx(3.3))
    with pytest.raises(GridError):
        g.snap(30.0, Phase.POST_CLOSURE)


def test_state_rejects_nonpositive_density():
    with pytest.raises(DomainError):
        State(0.0, [1000.0, 0.0, 1000.0], [0.0, 0.0, 0.0])


def test_post_closure_state_needs_wall_velocity():
    with pytest.raises(DomainError):
        State(0.0, [1000.0] * 3, [1.0] * 3, Phase.POST_CLOSURE)


def test_monitor_flags_supersonic_velocity():
    p = reference_params()
    status = State(0.0, [1000.0] * 3, [0.0, 600.0, 0.0]).monitor(p)
    assert not status.ok and status.node == 1
    assert check_monitor(np.array([1000.0, np.nan]), np.zeros(2), p).kind == "non-finite value"
    assert State(0.0, [1000.0] * 3, [1.0] * 3).monitor(p).ok


def test_reference_scenario_values():
    s = reference_scenario()
    assert s.params.sound_speed == 500.0
    assert s.courant == 0.5 and s.dx == 0.1 and s.closes
    assert not reference_scenario(t_close=1.0).closes


def test_scenario_replace_params():
    s = reference_scenario().replace(c_f=0.0, dx=0.2)
    assert s.params.c_f == 0.0 and s.dx == 0.2
    assert s.grid.n_half == 100


@pytest.mark.parametrize("changes", [dict(courant=0.0), dict(courant=1.5), dict(t_end=0.0),
                                      dict(rho_left=0.0)])
def test_scenario_rejects(changes):
    with pytest.raises(ParameterError):
        reference_scenario(**changes)


def test_initial_state_from_expression():
    s = reference_scenario(rho_init="1000 + exp(-(x-20)**2)")
    st0 = s.initial_state()
    assert st0.rho[200] == pytest.approx(1001.0)
    assert math.isclose(st0.rho[0], 1000.0)
