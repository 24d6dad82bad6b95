"""Observed order of accuracy from a family of nested meshes."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..core import sound_speed
from ..driver import run
from ..errors import AlignmentError, ValidationError


@dataclass
class OrderReport:
    mesh_levels: list          # (dx, dt) per level, coarse to fine
    errors: np.ndarray
    observed_orders: np.ndarray
    reference: str             # "exact" or "richardson"
    scheme: str


def _check_nested(scenarios):
    if len(scenarios) < 3:
        raise ValidationError("an order study needs at least 3 mesh levels")
    base = scenarios[0]
    for coarse, fine in zip(scenarios, scenarios[1:]):
        if abs(coarse.dx / fine.dx - 2.0) > 1e-9:
            raise AlignmentError(f"dx {fine.dx!r} does not halve {coarse.dx!r}")
        if fine.length_half != base.length_half or fine.t_end != base.t_end:
            raise AlignmentError("levels differ in length or horizon")
        if abs(fine.courant - base.courant) > 1e-12:
            raise AlignmentError("levels must share the Courant number")


def state_distance(rho_a, v_a, rho_b, v_b, params):
    """max(|dv|, c |drho| / rho_a): both parts in velocity units."""
    scale = sound_speed(params) / params.rho_a
    return max(float(np.max(np.abs(v_a - v_b))), scale * float(np.max(np.abs(rho_a - rho_b))))


def observed_order(scenarios, oracle=None, *, scheme="lax-wendroff", backend=None, max_workers=None):
    """Errors at t_end on the coarsest nodes and pairwise log2 ratios.

    ``scenarios`` must halve dx from one level to the next at a fixed
    Courant number.  With ``oracle(t, x) -> (rho, v)`` each level is compared
    with it; without one, level i is compared with level i+1.
    """
    scenarios = list(scenarios)
    _check_nested(scenarios)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        trajs = list(pool.map(lambda s: run(s, scheme=scheme, backend=backend), scenarios))

    params = scenarios[0].params
    finals = [t.final for t in trajs]
    n_common = len(finals[0].rho)
    # coarse node j sits at index j * 2**level on the finer grids
    common = [np.arange(n_common) * 2**i for i in range(len(finals))]
    if oracle is not None:
        errors = []
        for fin, idx, traj in zip(finals, common, trajs):
            x = traj.scenario.grid.nodes(fin.phase)[idx]
            rho_ex, v_ex = oracle(fin.t, x)
            rho_ex = np.broadcast_to(np.asarray(rho_ex, dtype=float), x.shape)
            v_ex = np.broadcast_to(np.asarray(v_ex, dtype=float), x.shape)
            errors.append(state_distance(fin.rho[idx], fin.v[idx], rho_ex, v_ex, params))
        reference = "exact"
    else:
        errors = [
            state_distance(a.rho[ia], a.v[ia], b.rho[ib], b.v[ib], params)
            for a, b, ia, ib in zip(finals, finals[1:], common, common[1:])
        ]
        reference = "richardson"
    errors = np.array(errors)
    with np.errstate(divide="ignore", invalid="ignore"):
        orders = np.log2(errors[:-1] / errors[1:])
    levels = [(t.scenario.dx, t.dt) for t in trajs]
    return OrderReport(levels, errors, orders, reference, scheme)
