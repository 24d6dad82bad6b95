import dataclasses

import numpy as np
import pytest
from hypothesis import given, strategies as st

from waterhammer.core import Phase, pressure_of_density, reference_scenario
from waterhammer.driver import Recording, Snapshot, run
from waterhammer.errors import SupportError, ValidationError
from waterhammer.verify.weak import Bump, Combination, bump_profile, default_bumps, weak_residual


@pytest.fixture(scope="module")
def coarse_run():
    return run(reference_scenario(dx=0.4, t_end=0.3), Recording(stride=1))


def constant_copy(traj, rho0, v0):
    """The same trajectory with every post-closure level replaced by (rho0, v0)."""
    snaps = []
    for s in traj.snapshots:
        rho = np.full_like(s.rho, rho0)
        v = np.full_like(s.v, v0)
        snaps.append(Snapshot(s.t, s.phase, rho, v, pressure_of_density(rho, traj.scenario.params)))
    return dataclasses.replace(traj, snapshots=snaps)


def bumps_for(traj):
    return default_bumps(traj.t_close, traj.scenario.t_end, traj.scenario.length_half)


def test_bump_profile():
    assert bump_profile(0.0) == 1.0
    assert bump_profile(1.0) == 0.0 and bump_profile(-1.5) == 0.0


def test_default_family_shape():
    bumps = default_bumps(0.04, 0.8, 20.0)
    assert len(bumps) == 6
    assert len({(b.t_center, b.x_center) for b in bumps}) == 3


def test_rest_state_residual_vanishes(coarse_run):
    tr = constant_copy(coarse_run, 1000.0, 0.0)
    rep = weak_residual(tr, bumps_for(tr))
    p = tr.scenario.params
    # scale: |phi|_1 times the flux magnitude
    for b, r in zip(rep.test_functions, rep.residuals[0]):
        scale = b.t_half * b.x_half * pressure_of_density(1000.0, p)
        assert abs(r) <= 1e-8 * scale


def test_zero_test_function(coarse_run):
    b = bumps_for(coarse_run)[0].scaled(0.0)
    assert weak_residual(coarse_run, [b]).residuals[0, 0] == 0.0


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(coarse_run, alpha, beta):
    b1, b2 = bumps_for(coarse_run)[1], bumps_for(coarse_run)[2]
    i1, i2 = weak_residual(coarse_run, [b1, b2]).residuals[0]
    combo = Combination(((alpha, b1), (beta, b2)))
    got = weak_residual(coarse_run, [combo]).residuals[0, 0]
    assert got == pytest.approx(alpha * i1 + beta * i2, rel=1e-12, abs=1e-12 * (abs(i1) + abs(i2)))


def test_component_weights(coarse_run):
    b = bumps_for(coarse_run)[0]
    rep = weak_residual(coarse_run, [b, Bump(b.t_center, b.x_center, b.t_half, b.x_half, (1.0, 0.0))])
    assert rep.components[0, 1, 1] == 0.0
    assert rep.components[0, 1, 0] == rep.components[0, 0, 0]


def test_support_must_be_interior(coarse_run):
    with pytest.raises(SupportError):
        weak_residual(coarse_run, [Bump(0.1, 19.0, 0.02, 2.0)])
    with pytest.raises(SupportError):
        weak_residual(coarse_run, [Bump(0.05, 10.0, 0.02, 2.0)])


def test_needs_every_level():
    tr = run(reference_scenario(dx=0.4, t_end=0.3), Recording(stride=5))
    with pytest.raises(ValidationError):
        weak_residual(tr)


def test_needs_closure():
    tr = run(reference_scenario(dx=0.4, t_end=0.1, t_close=1.0), Recording(stride=1))
    with pytest.raises(ValidationError):
        weak_residual(tr, [Bump(0.05, 10.0, 0.02, 2.0)])


def test_residual_shrinks_under_refinement():
    trs = [run(reference_scenario(dx=dx, t_end=0.3), Recording(stride=1)) for dx in (0.4, 0.2)]
    rep = weak_residual(trs)
    assert np.all(rep.ratios > 1.5)
    assert rep.hypotheses[0]["sup_abs_U"] < 1100


def test_flipped_source_sign_does_not_converge():
    trs = [run(reference_scenario(dx=dx, t_end=0.3), Recording(stride=1)) for dx in (0.4, 0.2)]
    flipped = weak_residual(trs, source_sign=-1.0)
    consistent = weak_residual(trs)
    # early bumps, where friction is still strong, keep an O(1) residual
    assert flipped.ratios[0, 0] < 1.2
    assert abs(flipped.residuals[1, 0]) > 20 * abs(consistent.residuals[1, 0])
