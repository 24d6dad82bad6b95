"""Nonlinear Lax-Wendroff update for the (rho, v) pipe-flow system.

The time derivatives come from the quasi-linear system

    rho_t = -rho v_x - v rho_x
    v_t   = -v v_x - (K/rho_a) rho_x / rho - C v|v|

and its time derivative with every time derivative replaced by the system
itself, so that one step is the second order Taylor polynomial in dt with
central differences in space.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import State, sound_speed
from .errors import CFLViolation, GridError, ParameterError, SingularityError

#: Accepted values for ``variant``.  "exact" carries 2 C**2 v**3 in v_tt;
#: "reduced" drops one power of C (2 C v**3) and is only kept to show that
#: the order study detects the difference.
VARIANTS = ("exact", "reduced")

_CFL_SLACK = 1e-12


@dataclass
class DerivativeStencil:
    d1_rho: np.ndarray
    d1_v: np.ndarray
    d2_rho: np.ndarray
    d2_v: np.ndarray


@dataclass
class TimeDerivatives:
    dt_rho: np.ndarray
    dt_v: np.ndarray
    dtt_rho: np.ndarray
    dtt_v: np.ndarray


def central_diffs(values, dx):
    """First and second central differences; end entries are NaN."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 3:
        raise GridError("central differences need at least 3 nodes")
    first = np.full_like(values, np.nan)
    second = np.full_like(values, np.nan)
    first[1:-1] = (values[2:] - values[:-2]) / (2.0 * dx)
    second[1:-1] = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / (dx * dx)
    return first, second


def stencil_of(state, dx):
    d1r, d2r = central_diffs(state.rho, dx)
    d1v, d2v = central_diffs(state.v, dx)
    return DerivativeStencil(d1r, d1v, d2r, d2v)


def _cubic_coefficient(params, variant):
    C = params.friction
    if variant == "exact":
        return C * C
    if variant == "reduced":
        return C
    raise ParameterError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _check_density(rho):
    bad = np.flatnonzero(~(rho[1:-1] > 0))
    if bad.size:
        j = int(bad[0]) + 1
        raise SingularityError(f"density {rho[j]!r} is not positive", node=j)


def first_time_derivs(state, stencil, params):
    """(rho_t, v_t) at interior nodes, NaN at the ends."""
    _check_density(state.rho)
    rho, v = state.rho, state.v
    a = params.stiffness_ratio
    C = params.friction
    dt_rho = -rho * stencil.d1_v - v * stencil.d1_rho
    dt_v = -v * stencil.d1_v - a / rho * stencil.d1_rho - C * v * np.abs(v)
    return dt_rho, dt_v


def second_time_derivs(state, stencil, params, variant="exact"):
    """(rho_tt, v_tt) at interior nodes, NaN at the ends.

    d(v|v|)/dx = 2|v| v_x holds for every v, so the expressions are
    continuous through v = 0 with no sign function needed.
    """
    _check_density(state.rho)
    rho, v = state.rho, state.v
    rx, ux, rxx, uxx = stencil.d1_rho, stencil.d1_v, stencil.d2_rho, stencil.d2_v
    a = params.stiffness_ratio
    C = params.friction
    cubic = _cubic_coefficient(params, variant)
    av = np.abs(v)
    dtt_rho = (
        2 * rho * ux**2 + 2 * rho * v * uxx + 4 * v * ux * rx
        + 2 * C * av * rho * ux + C * v * av * rx + (a + v**2) * rxx
    )
    dtt_v = (
        2 * v * ux**2 + (a + v**2) * uxx + 5 * C * v * av * ux
        + 2 * a / rho * rx * ux - 2 * a * v / rho**2 * rx**2
        + 2 * a * v / rho * rxx + 2 * C * av * a / rho * rx
        + 2 * cubic * v**3
    )
    return dtt_rho, dtt_v


def time_derivatives(state, dx, params, variant="exact"):
    stencil = stencil_of(state, dx)
    dt_rho, dt_v = first_time_derivs(state, stencil, params)
    dtt_rho, dtt_v = second_time_derivs(state, stencil, params, variant)
    return TimeDerivatives(dt_rho, dt_v, dtt_rho, dtt_v)


def courant_number(dt, dx, params):
    return dt * sound_speed(params) / dx


def check_cfl(dt, dx, params, **where):
    co = courant_number(dt, dx, params)
    if co > 1.0 + _CFL_SLACK:
        raise CFLViolation(co, **where)
    return co


def cfl_max_dt(params, dx, courant=0.5):
    """Largest step ``courant * dx / c`` for a Courant number in (0, 1]."""
    if not (0 < courant <= 1):
        raise ParameterError(f"courant must lie in (0, 1], got {courant!r}")
    if not dx > 0:
        raise ParameterError("dx must be > 0")
    return courant * dx / sound_speed(params)


def lw_interior_step(state, dt, dx, params, *, variant="exact", enforce_cfl=True, backend=None):
    """One Lax-Wendroff step of the interior nodes.

    Returns a new :class:`State` at ``state.t + dt`` whose end nodes still
    hold the old values; the boundary module fills them.
    """
    if enforce_cfl:
        check_cfl(dt, dx, params, t=state.t)
    _check_density(state.rho)
    kernel = _backend.get(backend)
    rho_new = state.rho.copy()
    v_new = state.v.copy()
    kernel.lw_step(
        state.rho, state.v, rho_new, v_new, float(dt), float(dx),
        params.stiffness_ratio, params.friction, _cubic_coefficient(params, variant),
    )
    return State(state.t + dt, rho_new, v_new, state.phase)


def upwind_interior_step(state, dt, dx, params, *, enforce_cfl=True, backend=None):
    """First-order reference step (upwinded Riemann invariants, Euler in time).

    Only used to check that the order harness tells first from second order.
    """
    if enforce_cfl:
        check_cfl(dt, dx, params, t=state.t)
    _check_density(state.rho)
    kernel = _backend.get(backend)
    rho_new = state.rho.copy()
    v_new = state.v.copy()
    kernel.upwind_step(
        state.rho, state.v, rho_new, v_new, float(dt), float(dx),
        params.stiffness_ratio, params.friction,
    )
    return State(state.t + dt, rho_new, v_new, state.phase)
