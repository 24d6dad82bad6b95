"""Reservoir ends before the valve closes, the closure itself, and the
hard wall at the valve afterwards.

Both reservoir ends pin the density and take the velocity from a one-sided
discrete mass balance ``P0 (V1 - V0) + V0 (P1 - P0) = 0`` evaluated with the
already-updated neighbour.
"""

from dataclasses import dataclass

import numpy as np

from .core import Phase, State
from .errors import BoundaryDegeneracyError, PhaseError

_DEGENERACY = 1e-9


@dataclass(frozen=True)
class BoundarySpec:
    phase: Phase
    rho_left: float
    rho_right: float = float("nan")

    @classmethod
    def for_scenario(cls, scenario, phase=Phase.PRE_CLOSURE):
        return cls(phase, scenario.rho_left, scenario.rho_right)


def _reservoir_velocity(p_end, p_next, v_next, params, node):
    denom = 2.0 * p_end - p_next
    if not abs(denom) >= _DEGENERACY * params.rho_a:
        raise BoundaryDegeneracyError(
            f"reservoir denominator 2P(end) - P(next) = {denom!r} is degenerate", node=node
        )
    return p_end * v_next / denom


def apply_pre_closure(state, spec, params):
    """Fill both reservoir ends of ``state`` in place and return it."""
    rho, v = state.rho, state.v
    rho[0] = spec.rho_left
    rho[-1] = spec.rho_right
    v[0] = _reservoir_velocity(rho[0], rho[1], v[1], params, 0)
    v[-1] = _reservoir_velocity(rho[-1], rho[-2], v[-2], params, len(rho) - 1)
    return state


def apply_post_closure(state, spec, params):
    """Reservoir at x = 0, closed valve at x = L (v = 0, zero density slope)."""
    if state.phase is not Phase.POST_CLOSURE:
        raise PhaseError("apply_post_closure needs a post-closure state")
    rho, v = state.rho, state.v
    rho[0] = spec.rho_left
    v[0] = _reservoir_velocity(rho[0], rho[1], v[1], params, 0)
    v[-1] = 0.0
    rho[-1] = rho[-2]
    return state


def valve_slope_mismatch(state, grid):
    """Central density slope at the valve node just before closure.

    The hard-wall condition wants it to vanish; it generally does not.
    """
    j = grid.valve_index
    return float((state.rho[j + 1] - state.rho[j - 1]) / (2.0 * grid.dx))


def close_valve(state, scenario, dt=None):
    """Restrict a pre-closure state to [0, L] and impose the wall values.

    With ``dt`` given, ``state.t`` must lie within dt/2 of ``t_close``.
    """
    if state.phase is not Phase.PRE_CLOSURE:
        raise PhaseError("valve is already closed")
    if dt is not None and abs(state.t - scenario.t_close) > 0.5 * dt * (1 + 1e-9):
        raise PhaseError(
            f"closure requested at t={state.t!r}, more than dt/2 from t_close={scenario.t_close!r}"
        )
    n = scenario.grid.valve_index
    rho = np.array(state.rho[: n + 1])
    v = np.array(state.v[: n + 1])
    v[n] = 0.0
    rho[n] = rho[n - 1]
    return State(state.t, rho, v, Phase.POST_CLOSURE)
