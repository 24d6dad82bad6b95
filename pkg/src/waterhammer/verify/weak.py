"""Discrete weak-form residual of a post-closure trajectory.

The numerical solution W = (rho, q) is taken piecewise constant on the cells
``[(n-1) dt, n dt] x [(j-1) dx, j dx]`` (times measured from the closure).
A test function is replaced by its average over the five-cell cross around
each cell, each cell integral done with the midpoint rule, and the weak
form is summed with backward differences in time and central differences in
space of those averages.
"""

from dataclasses import dataclass, field

import numpy as np

from ..core import pressure_of_density
from ..errors import SupportError, ValidationError


def bump_profile(s):
    """(1 - s^2)^3 on |s| < 1, zero outside; C^2 across |s| = 1."""
    s = np.asarray(s, dtype=float)
    return np.where(np.abs(s) < 1.0, (1.0 - s * s) ** 3, 0.0)


@dataclass(frozen=True)
class Bump:
    """Tensor-product bump centred at (t_center, x_center).

    ``weights`` scales the (mass, momentum) components of the vector test
    function.
    """

    t_center: float
    x_center: float
    t_half: float
    x_half: float
    weights: tuple = (1.0, 1.0)

    def __call__(self, t, x):
        return bump_profile((t - self.t_center) / self.t_half) * bump_profile(
            (x - self.x_center) / self.x_half
        )

    def scaled(self, factor):
        return Bump(self.t_center, self.x_center, self.t_half, self.x_half,
                    (factor * self.weights[0], factor * self.weights[1]))

    def components(self, t, x):
        """(mass, momentum) components of the vector test function."""
        base = self(t, x)
        return self.weights[0] * base, self.weights[1] * base

    def support(self):
        return (self.t_center - self.t_half, self.t_center + self.t_half,
                self.x_center - self.x_half, self.x_center + self.x_half)

    def describe(self):
        return (f"t={self.t_center:g}+-{self.t_half:g}, x={self.x_center:g}+-{self.x_half:g}, "
                f"w=({self.weights[0]:g},{self.weights[1]:g})")


@dataclass(frozen=True)
class Combination:
    """Linear combination sum(coef * phi) of test functions."""

    terms: tuple  # of (coefficient, test function)

    def components(self, t, x):
        mass = momentum = 0.0
        for coef, phi in self.terms:
            m, p = phi.components(t, x)
            mass = mass + coef * m
            momentum = momentum + coef * p
        return mass, momentum

    def support(self):
        boxes = np.array([phi.support() for _, phi in self.terms])
        return boxes[:, 0].min(), boxes[:, 1].max(), boxes[:, 2].min(), boxes[:, 3].max()

    def describe(self):
        return " + ".join(f"{coef:g}*[{phi.describe()}]" for coef, phi in self.terms)


def default_bumps(t_close, t_end, length_half):
    """Three centres along the space-time diagonal at two scales."""
    span_t = t_end - t_close
    bumps = []
    for ft, fx in ((0.25, 0.3), (0.5, 0.5), (0.75, 0.7)):
        for st, sx in ((0.12, 0.2), (0.06, 0.12)):
            bumps.append(Bump(t_close + ft * span_t, fx * length_half, st * span_t, sx * length_half))
    return bumps


@dataclass
class WeakResidualReport:
    test_functions: list
    mesh_levels: list
    residuals: np.ndarray          # (levels, test functions), signed
    components: np.ndarray         # (levels, test functions, 2): mass, momentum
    hypotheses: list = field(default_factory=list)

    @property
    def abs_residuals(self):
        return np.abs(self.residuals)

    @property
    def ratios(self):
        """|I| on level i over |I| on level i+1, per test function."""
        r = self.abs_residuals
        return r[:-1] / r[1:]

    @property
    def observed_orders(self):
        return np.log2(self.ratios)


def _post_closure_levels(trajectory):
    snaps = trajectory.post_closure_snapshots()
    if len(snaps) < 3:
        raise ValidationError("trajectory holds fewer than 3 post-closure levels")
    dt = trajectory.dt
    times = np.array([s.t for s in snaps])
    steps = np.diff(times)
    # a trailing partial step is dropped rather than treated as a full cell
    if abs(steps[-1] - dt) > 1e-9 * dt:
        snaps, steps = snaps[:-1], steps[:-1]
    if np.any(np.abs(steps - dt) > 1e-9 * dt):
        raise ValidationError("weak residual needs every post-closure time level (snapshot stride 1)")
    return snaps


def _check_support(phi, t1, t_end, length):
    t_lo, t_hi, x_lo, x_hi = phi.support()
    if not (t_lo > t1 and t_hi < t_end and x_lo > 0 and x_hi < length):
        raise SupportError(f"test function support [{phi.describe()}] touches the domain boundary")


def _cross_average(mid):
    c = mid[1:-1, 1:-1]
    return (c + mid[:-2, 1:-1] + mid[2:, 1:-1] + mid[1:-1, :-2] + mid[1:-1, 2:]) / 5.0


def _cross_averages(phi, t1, dt, dx, n_t, n_x):
    """Averaged (mass, momentum) components on n = 0..n_t+1, j = 0..n_x+1.

    Arrays are indexed with a shift of one so that index 0 is level/node -1.
    """
    tm = t1 + (np.arange(-1, n_t + 3) - 0.5) * dt
    xm = (np.arange(-1, n_x + 3) - 0.5) * dx
    mass, momentum = phi.components(tm[:, None], xm[None, :])
    shape = (len(tm), len(xm))
    return (_cross_average(np.broadcast_to(mass, shape)),
            _cross_average(np.broadcast_to(momentum, shape)))


def _component(phi, W, F, G, t1_coefficient, dt, dx):
    n_t = W.shape[0] - 1
    n_x = W.shape[1] - 1
    cell = (slice(1, n_t + 1), slice(1, n_x + 1))
    dphi_t = (phi[1:n_t + 1, 1:n_x + 1] - phi[0:n_t, 1:n_x + 1]) / dt
    dphi_x = (phi[1:n_t + 1, 2:n_x + 2] - phi[1:n_t + 1, 0:n_x]) / (2.0 * dx)
    total = np.sum(W[cell] * dphi_t + F[cell] * dphi_x) * dt * dx
    if G is not None:
        total += np.sum(G[cell] * phi[cell]) * dt * dx
    # line terms at t = t1 (data at the closure level) and at the valve x = L
    total += t1_coefficient * np.sum(W[0, 1:] * phi[1, 1:n_x + 1]) * dx
    total -= np.sum(F[1:, n_x] * phi[1:n_t + 1, n_x]) * dt
    return total


def _assemble(phi, rho, q, F2, G2, t1, dt, dx, t1_coefficient):
    n_t = rho.shape[0] - 1
    n_x = rho.shape[1] - 1
    phi_mass, phi_mom = _cross_averages(phi, t1, dt, dx, n_t, n_x)
    mass = _component(phi_mass, rho, q, None, t1_coefficient, dt, dx)
    momentum = _component(phi_mom, q, F2, G2, t1_coefficient, dt, dx)
    return mass, momentum


def weak_residual(trajectories, test_functions=None, *, t1_coefficient=2.0, source_sign=1.0):
    """Weak-form residual I(W) of one or more post-closure trajectories.

    ``trajectories`` may be a single trajectory or a sequence ordered from
    coarse to fine; the report then carries refinement ratios per test
    function.

    For w_t + F(w)_x = G(w) the source enters as ``+G . phi``, which is
    ``source_sign=1``.  ``source_sign=-1`` gives the ``-G . phi`` variant,
    whose residual does not vanish for solutions of the friction equation.
    """
    if not isinstance(trajectories, (list, tuple)):
        trajectories = [trajectories]
    first = trajectories[0]
    scen = first.scenario
    if first.closure_step is None:
        raise ValidationError("weak residual needs a trajectory with a valve closure")
    t1 = first.t_close
    if test_functions is None:
        test_functions = default_bumps(t1, scen.t_end, scen.length_half)
    for phi in test_functions:
        _check_support(phi, t1, scen.t_end, scen.length_half)

    residuals = np.zeros((len(trajectories), len(test_functions)))
    components = np.zeros((len(trajectories), len(test_functions), 2))
    levels, hypotheses = [], []
    for i, traj in enumerate(trajectories):
        params = traj.scenario.params
        snaps = _post_closure_levels(traj)
        dx = traj.scenario.dx
        rho = np.array([s.rho for s in snaps])
        v = np.array([s.v for s in snaps])
        q = rho * v
        F2 = q * v + pressure_of_density(rho, params)
        G2 = -source_sign * params.c_f * q * np.abs(q) / (2.0 * params.D * rho)
        for k, phi in enumerate(test_functions):
            m, p = _assemble(phi, rho, q, F2, G2, traj.t_close, traj.dt, dx, t1_coefficient)
            components[i, k] = (m, p)
            residuals[i, k] = m + p
        levels.append((dx, traj.dt))
        hypotheses.append(_hypotheses(traj))
    return WeakResidualReport(list(test_functions), levels, residuals, components, hypotheses)


def _hypotheses(traj):
    """Bounds the convergence argument assumes, measured on this run."""
    pre = traj.pre_closure
    params = traj.scenario.params
    dx = traj.scenario.dx
    q = pre.rho * pre.v
    F1, F2 = q, q * pre.v + pressure_of_density(pre.rho, params)
    l1_dxF = float(np.sum(np.abs(np.diff(F1))) + np.sum(np.abs(np.diff(F2))))
    return {
        "sup_abs_U": max(abs(traj.bounds["rho_max"]), traj.bounds["abs_v_max"]),
        "sup_abs_u_closure": float(max(np.abs(pre.rho[: traj.scenario.grid.valve_index + 1]).max(),
                                       np.abs(pre.v).max())),
        "l1_dxF_closure": l1_dxF,
        "dx": dx,
    }

