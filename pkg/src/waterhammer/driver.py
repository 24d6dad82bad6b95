"""Time marching over both phases, probe recording and trajectory assembly."""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from . import _backend
from .boundary import (
    BoundarySpec, apply_post_closure, apply_pre_closure, close_valve, valve_slope_mismatch,
)
from .core import Phase, pressure_of_density, sound_speed
from .errors import InsufficientDataError, MonitorViolation, ParameterError
from .scheme import _cubic_coefficient, cfl_max_dt

SCHEMES = ("lax-wendroff", "lax-wendroff-reduced", "upwind")


@dataclass(frozen=True)
class Recording:
    """What to keep from a run.

    ``stride`` is the snapshot spacing in steps (0 keeps no snapshots apart
    from the closure level and the last one).  Probes are sampled every
    ``probe_stride`` steps.
    """

    probes: tuple = ()
    stride: int = 0
    probe_stride: int = 1

    def __post_init__(self):
        object.__setattr__(self, "probes", tuple(float(x) for x in self.probes))
        if self.stride < 0 or self.probe_stride < 1:
            raise ParameterError("stride must be >= 0 and probe_stride >= 1")


@dataclass
class Snapshot:
    t: float
    phase: Phase
    rho: np.ndarray
    v: np.ndarray
    p: np.ndarray


@dataclass
class ProbeSeries:
    x_requested: float
    x_snapped: float
    node: int
    t: np.ndarray
    rho: np.ndarray
    v: np.ndarray
    p: np.ndarray


@dataclass(frozen=True)
class Event:
    t: float
    kind: str
    detail: str = ""


@dataclass
class Trajectory:
    scenario: object
    dt: float
    courant: float
    scheme: str
    closure_step: int | None
    snapshots: list = field(default_factory=list)
    probes: list = field(default_factory=list)
    events: list = field(default_factory=list)
    pre_closure: object = None
    final: object = None
    bounds: dict = field(default_factory=dict)

    @property
    def snapshot_times(self):
        return [s.t for s in self.snapshots]

    @property
    def t_close(self):
        return None if self.closure_step is None else self.pre_closure.t

    def post_closure_snapshots(self):
        return [s for s in self.snapshots if s.phase is Phase.POST_CLOSURE]

    def probe(self, x):
        """Series whose requested or snapped coordinate equals ``x``."""
        for series in self.probes:
            if x in (series.x_requested, series.x_snapped):
                return series
        raise KeyError(x)


def _step_plan(t_end, dt):
    """Number of full steps and the length of a trailing partial step."""
    ratio = t_end / dt
    n = round(ratio)
    if abs(ratio - n) <= 1e-9 * max(1.0, ratio):
        return n, 0.0
    n = math.floor(ratio)
    return n, t_end - n * dt


class _ProbeBuffer:
    def __init__(self, x, grid):
        self.x_requested = x
        self.node, self.x_snapped = grid.snap(x)
        self.t, self.rho, self.v = [], [], []

    def take(self, t, rho, v):
        if self.node < len(rho):
            self.t.append(t)
            self.rho.append(rho[self.node])
            self.v.append(v[self.node])

    def finish(self, params):
        rho = np.array(self.rho)
        return ProbeSeries(
            self.x_requested, self.x_snapped, self.node, np.array(self.t), rho,
            np.array(self.v), pressure_of_density(rho, params) if rho.size else rho,
        )


def run(scenario, recording=None, *, scheme="lax-wendroff", courant=None,
        enforce_cfl=True, backend=None):
    """March ``scenario`` from 0 to ``t_end`` and return a :class:`Trajectory`.

    ``courant`` overrides the scenario's Courant number.  With
    ``enforce_cfl=False`` any positive value is accepted, which is how the
    instability side of the CFL condition is exercised; the monitor then
    aborts the run once the solution blows up.
    """
    recording = recording or Recording()
    if scheme not in SCHEMES:
        raise ParameterError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    params, grid = scenario.params, scenario.grid
    co = scenario.courant if courant is None else float(courant)
    c = sound_speed(params)
    if enforce_cfl:
        dt = cfl_max_dt(params, grid.dx, co)
    else:
        if not co > 0:
            raise ParameterError("courant must be > 0")
        dt = co * grid.dx / c

    n_full, remainder = _step_plan(scenario.t_end, dt)
    n_total = n_full + (1 if remainder > 0 else 0)
    n_close = None
    traj = Trajectory(scenario, dt, co, scheme, None)
    if scenario.closes:
        n_close = max(1, min(round(scenario.t_close / dt), n_full))
        snap = n_close * dt - scenario.t_close
        traj.closure_step = n_close
        if snap != 0.0:
            traj.events.append(Event(n_close * dt, "closure-snap", f"t_close moved by {snap:.3e} s"))

    kernel = _backend.get(backend)
    a, C = params.stiffness_ratio, params.friction
    cubic = _cubic_coefficient(params, "reduced" if scheme == "lax-wendroff-reduced" else "exact")
    if scheme == "upwind":
        def advance(src, dst, h):
            kernel.upwind_step(src.rho, src.v, dst.rho, dst.v, h, grid.dx, a, C)
    else:
        def advance(src, dst, h):
            kernel.lw_step(src.rho, src.v, dst.rho, dst.v, h, grid.dx, a, C, cubic)

    state = scenario.initial_state()
    status = state.monitor(params)
    if not status.ok:
        raise MonitorViolation(status.kind, status.value, step=0, node=status.node, t=0.0)
    spec = BoundarySpec.for_scenario(scenario, Phase.PRE_CLOSURE)
    apply_boundary = apply_pre_closure
    probes = []
    for x in recording.probes:
        buf = _ProbeBuffer(x, grid)
        if abs(buf.x_snapped - x) > 1e-12 * max(1.0, abs(x)):
            warnings.warn(f"probe x={x} snapped to node x={buf.x_snapped}", stacklevel=2)
            traj.events.append(Event(0.0, "probe-snap", f"{x} -> {buf.x_snapped}"))
        probes.append(buf)

    def record_snapshot(s):
        traj.snapshots.append(
            Snapshot(s.t, s.phase, s.rho.copy(), s.v.copy(), pressure_of_density(s.rho, params))
        )

    def record_probes(s):
        for buf in probes:
            buf.take(s.t, s.rho, s.v)

    rmin, rmax, vmax = float(state.rho.min()), float(state.rho.max()), float(np.abs(state.v).max())
    if recording.stride:
        record_snapshot(state)
    record_probes(state)

    work = state.copy()
    for n in range(1, n_total + 1):
        h = dt if n <= n_full else remainder
        advance(state, work, h)
        work.t = scenario.t_end if n > n_full else n * dt
        apply_boundary(work, spec, params)
        lo = work.rho.min()
        hi = np.abs(work.v).max()
        if not (lo > 0 and hi < c and np.isfinite(work.rho).all()):
            status = work.monitor(params)
            traj.events.append(Event(work.t, "monitor-abort", status.kind))
            raise MonitorViolation(status.kind, status.value, step=n, node=status.node, t=work.t)
        rmin = min(rmin, lo)
        rmax = max(rmax, float(work.rho.max()))
        vmax = max(vmax, float(hi))
        state, work = work, state

        if n == n_close:
            traj.pre_closure = state.copy()
            mismatch = valve_slope_mismatch(state, grid)
            state = close_valve(state, scenario, dt)
            work = state.copy()
            spec = BoundarySpec.for_scenario(scenario, Phase.POST_CLOSURE)
            apply_boundary = apply_post_closure
            traj.events.append(
                Event(state.t, "valve-closure", f"valve density slope before closure {mismatch:.6e}")
            )
            record_snapshot(state)
            record_probes(state)
            continue

        if recording.stride and (n % recording.stride == 0 or n == n_total):
            record_snapshot(state)
        elif n == n_total:
            record_snapshot(state)
        if n % recording.probe_stride == 0 or n == n_total:
            record_probes(state)

    traj.final = state
    traj.probes = [buf.finish(params) for buf in probes]
    traj.bounds = {"rho_min": rmin, "rho_max": rmax, "abs_v_max": vmax}
    return traj


def joukowsky_surge(params, delta_v):
    """Pressure rise rho_a * c * delta_v of an instantaneous flow stop."""
    return params.rho_a * sound_speed(params) * delta_v


def period_from_samples(t, y, prominence_fraction=0.5, min_peaks=3):
    """Dominant period of ``y(t)`` from the spacing of its major peaks."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if y.size < 5:
        raise InsufficientDataError("series too short for a period estimate")
    span = float(y.max() - y.min())
    if not span > 0:
        raise InsufficientDataError("signal has no peaks")
    peaks, _ = find_peaks(y, prominence=prominence_fraction * span)
    if peaks.size < min_peaks:
        raise InsufficientDataError(
            f"found {peaks.size} major peaks, need {min_peaks} (cover at least two periods)"
        )
    return float(np.median(np.diff(t[peaks])))


def oscillation_period_estimate(series, field="p", after=None):
    """Period of a probe signal, optionally only using samples with t > ``after``."""
    t = series.t
    y = getattr(series, field)
    if after is not None:
        keep = t > after
        t, y = t[keep], y[keep]
    return period_from_samples(t, y)
