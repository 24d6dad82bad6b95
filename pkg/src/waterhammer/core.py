"""Physical parameters, mesh, state and scenario description."""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GridError, ParameterError
from .profiles import Profile


class Phase(enum.Enum):
    PRE_CLOSURE = "pre"
    POST_CLOSURE = "post"


@dataclass(frozen=True)
class FluidParams:
    """Fluid and pipe constants.

    K is the bulk stiffness of the linear pressure law, rho_a and p_a the
    reference density and pressure, c_f the friction factor and D the pipe
    diameter.
    """

    K: float
    rho_a: float
    p_a: float
    c_f: float
    D: float

    def __post_init__(self):
        for name in ("K", "rho_a", "D"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(f"{name} must be finite and > 0, got {value!r}")
        for name in ("c_f", "p_a"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ParameterError(f"{name} must be finite and >= 0, got {value!r}")

    @property
    def sound_speed(self):
        return math.sqrt(self.K / self.rho_a)

    @property
    def friction(self):
        """Friction coefficient C = c_f / (2 D) multiplying v|v|."""
        return self.c_f / (2.0 * self.D)

    @property
    def stiffness_ratio(self):
        """K / rho_a, the squared sound speed."""
        return self.K / self.rho_a


def sound_speed(params):
    return math.sqrt(params.K / params.rho_a)


def pressure_of_density(rho, params):
    """Linear pressure law ``p_a + K (rho - rho_a) / rho_a``.

    Works on scalars and arrays.  Negative pressures are returned as is.
    """
    arr = np.asarray(rho, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("density must be > 0 for the pressure law")
    p = params.p_a + params.K * (arr - params.rho_a) / params.rho_a
    if np.ndim(rho) == 0:
        return float(p)
    return p


@dataclass(frozen=True)
class Grid:
    """Uniform node-centred mesh over [0, 2L] with the valve at x = L."""

    length_half: float
    dx: float

    def __post_init__(self):
        if not (self.dx > 0 and self.length_half > 0):
            raise GridError("length_half and dx must be > 0")
        ratio = self.length_half / self.dx
        n = round(ratio)
        if n < 2 or abs(ratio - n) > 1e-9 * max(1.0, ratio):
            raise GridError(
                f"L/dx must be an integer >= 2 (L={self.length_half!r}, dx={self.dx!r})"
            )

    @property
    def n_half(self):
        """N_x = L / dx, also the valve node index."""
        return round(self.length_half / self.dx)

    @property
    def valve_index(self):
        return self.n_half

    @property
    def n_nodes_full(self):
        return 2 * self.n_half + 1

    def nodes(self, phase=Phase.PRE_CLOSURE):
        n = self.n_nodes_full if phase is Phase.PRE_CLOSURE else self.n_half + 1
        x = np.arange(n) * self.dx
        # pin the valve node so that x[N_x] == L exactly
        x[self.n_half] = self.length_half
        return x

    def snap(self, x, phase=Phase.PRE_CLOSURE):
        """Index and coordinate of the node nearest to ``x``."""
        nodes = self.nodes(phase)
        if not (nodes[0] - 0.5 * self.dx <= x <= nodes[-1] + 0.5 * self.dx):
            raise GridError(f"x = {x!r} lies outside the active domain")
        j = int(np.clip(round(x / self.dx), 0, len(nodes) - 1))
        return j, float(nodes[j])


@dataclass
class State:
    """Density and velocity at every active node at one time level."""

    t: float
    rho: np.ndarray
    v: np.ndarray
    phase: Phase = Phase.PRE_CLOSURE

    def __post_init__(self):
        self.rho = np.array(self.rho, dtype=float)
        self.v = np.array(self.v, dtype=float)
        if self.rho.shape != self.v.shape or self.rho.ndim != 1:
            raise DomainError("rho and v must be 1-D arrays of equal length")
        bad = np.flatnonzero(~(self.rho > 0))
        if bad.size:
            raise DomainError(f"density must be > 0 (node {bad[0]}, rho={self.rho[bad[0]]!r})")
        if self.phase is Phase.POST_CLOSURE and self.v[-1] != 0.0:
            raise DomainError("post-closure state must have v = 0 at the valve node")

    def copy(self):
        return State(self.t, self.rho.copy(), self.v.copy(), self.phase)

    def monitor(self, params):
        """Return a :class:`MonitorStatus` for the hyperbolicity checks."""
        return check_monitor(self.rho, self.v, params)


@dataclass(frozen=True)
class MonitorStatus:
    ok: bool
    kind: str = ""
    node: int = -1
    value: float = 0.0


def check_monitor(rho, v, params):
    c = params.sound_speed
    finite = np.isfinite(rho) & np.isfinite(v)
    if not finite.all():
        j = int(np.flatnonzero(~finite)[0])
        return MonitorStatus(False, "non-finite value", j, float("nan"))
    j = int(np.argmin(rho))
    if rho[j] <= 0:
        return MonitorStatus(False, "density <= 0", j, float(rho[j]))
    speed = np.abs(v)
    j = int(np.argmax(speed))
    if speed[j] >= c:
        return MonitorStatus(False, "|v| >= sound speed", j, float(v[j]))
    return MonitorStatus(True)


@dataclass(frozen=True)
class Scenario:
    """A complete experiment: pipe, fluid, mesh, data and horizon.

    ``t_close >= t_end`` disables the valve closure.
    """

    params: FluidParams
    length_half: float
    dx: float
    courant: float
    t_close: float
    t_end: float
    rho_init: Profile
    v_init: Profile
    rho_left: float
    rho_right: float
    grid: Grid = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rho_init", Profile(self.rho_init))
        object.__setattr__(self, "v_init", Profile(self.v_init))
        object.__setattr__(self, "grid", Grid(self.length_half, self.dx))
        if not (0 < self.courant <= 1):
            raise ParameterError(f"courant must lie in (0, 1], got {self.courant!r}")
        if not (self.t_end > 0 and self.t_close > 0):
            raise ParameterError("t_close and t_end must be > 0")
        if not (self.rho_left > 0 and self.rho_right > 0):
            raise ParameterError("reservoir densities must be > 0")

    @property
    def closes(self):
        return self.t_close < self.t_end

    def replace(self, **changes):
        values = {
            name: getattr(self, name)
            for name in (
                "params", "length_half", "dx", "courant", "t_close", "t_end",
                "rho_init", "v_init", "rho_left", "rho_right",
            )
        }
        param_names = {"K", "rho_a", "p_a", "c_f", "D"}
        pchanges = {k: changes.pop(k) for k in list(changes) if k in param_names}
        if pchanges:
            p = values["params"]
            values["params"] = FluidParams(**{**p.__dict__, **pchanges})
        values.update(changes)
        return Scenario(**values)

    def initial_state(self):
        x = self.grid.nodes(Phase.PRE_CLOSURE)
        return State(0.0, self.rho_init(x), self.v_init(x), Phase.PRE_CLOSURE)


def reference_params():
    """Water in a 0.2 m pipe: c = 500 m/s, C = 5 1/m."""
    return FluidParams(K=2.5e8, rho_a=1000.0, p_a=1.01e5, c_f=2.0, D=0.2)


def reference_scenario(**changes):
    """The 40 m reservoir-to-reservoir pipe with the valve closing at 0.04 s."""
    scenario = Scenario(
        params=reference_params(),
        length_half=20.0,
        dx=0.1,
        courant=0.5,
        t_close=0.04,
        t_end=0.8,
        rho_init=1000.0,
        v_init=1.0,
        rho_left=1000.0,
        rho_right=1000.0,
    )
    return scenario.replace(**changes) if changes else scenario
