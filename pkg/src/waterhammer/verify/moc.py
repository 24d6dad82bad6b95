"""Method-of-characteristics oracles for the scalar model

    u_t + c u_x = -b u^2

on the half line with an odd reflection at x = 0.  The wave speed is a
constant; a solution dependent speed c(u) only enters through
:func:`critical_time` and the characteristic integrator used to check it.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import CharacteristicCrossingError, ParameterError


def smoothed_heaviside(x, epsilon):
    """Quintic C^2 ramp from 0 at -epsilon to 1 at +epsilon."""
    if not epsilon > 0:
        raise ParameterError(f"epsilon must be > 0, got {epsilon!r}")
    s = np.clip((np.asarray(x, dtype=float) + epsilon) / (2.0 * epsilon), 0.0, 1.0)
    # evaluate the ramp on the nearer half and mirror, so that roundoff near
    # s = 1 cannot make it decrease
    r = np.minimum(s, 1.0 - s)
    ramp = r * r * r * (10.0 + r * (-15.0 + 6.0 * r))
    h = np.where(s <= 0.5, ramp, 1.0 - ramp)
    return float(h) if np.ndim(x) == 0 else h


@dataclass(frozen=True)
class MocOracle:
    f: object
    epsilon: float
    c: float
    b: float = 0.0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ParameterError("epsilon must be > 0")
        if not self.c > 0:
            raise ParameterError("wave speed c must be > 0")
        if not self.b >= 0:
            raise ParameterError("damping b must be >= 0")

    def initial(self, xi):
        """The smoothed initial profile f(xi) H_eps(xi)."""
        xi = np.asarray(xi, dtype=float)
        return np.asarray(self.f(xi), dtype=float) * smoothed_heaviside(xi, self.epsilon)


def moc_scalar_solution(oracle, t, x):
    """Reflected solution g/(b t g + 1) + h/(b t h - 1).

    g is the smoothed profile at x - c t and h the one at -x - c t.  Raises
    :class:`CharacteristicCrossingError` once a denominator has reached zero
    along the characteristic, i.e. past the blow-up time.
    """
    t = float(t)
    x_arr = np.asarray(x, dtype=float)
    g = oracle.initial(x_arr - oracle.c * t)
    h = oracle.initial(-x_arr - oracle.c * t)
    den_g = oracle.b * t * g + 1.0
    den_h = oracle.b * t * h - 1.0
    if np.any(den_g <= 0) or np.any(den_h >= 0):
        raise CharacteristicCrossingError(f"t={t!r} is past the critical time of the damped transport")
    u = g / den_g + h / den_h
    return float(u) if np.ndim(x) == 0 else u


def critical_time(oracle, wave_speed_derivative, x_range=(-10.0, 10.0), samples=20001):
    """Earliest t > 0 with (b g t + 1)^2 + g' c'(g) t = 0 over sampled xi.

    ``wave_speed_derivative`` is c'(u) (a callable, or a number for a
    constant).  Returns ``inf`` when no sample has a positive root.
    """
    xi = np.linspace(x_range[0], x_range[1], samples)
    step = 1e-6 * max(1.0, abs(x_range[1] - x_range[0]))
    g = oracle.initial(xi)
    gp = (oracle.initial(xi + step) - oracle.initial(xi - step)) / (2.0 * step)
    if callable(wave_speed_derivative):
        cp = np.asarray(wave_speed_derivative(g), dtype=float) * np.ones_like(g)
    else:
        cp = np.full_like(g, float(wave_speed_derivative))
    # (b g)^2 t^2 + (2 b g + g' c') t + 1 = 0
    qa = (oracle.b * g) ** 2
    qb = 2.0 * oracle.b * g + gp * cp
    best = np.inf
    lin = qa == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        t_lin = np.where(lin & (qb < 0), -1.0 / qb, np.inf)
        disc = qb * qb - 4.0 * qa
        root = np.sqrt(np.where(disc >= 0, disc, np.nan))
        r1 = (-qb - root) / (2.0 * qa)
        r2 = (-qb + root) / (2.0 * qa)
    for r in (r1, r2):
        r = np.where(~lin & (disc >= 0) & (r > 0), r, np.inf)
        best = min(best, float(np.nanmin(r)))
    return min(best, float(t_lin.min()))


def characteristic_crossing_time(oracle, wave_speed, x_range=(-10.0, 10.0), samples=4001,
                                 t_max=100.0, steps=20000):
    """First crossing of neighbouring characteristics, integrated with RK4.

    Each characteristic carries (x, u) with x' = c(u), u' = -b u^2.  The
    crossing time between two steps is found by linear interpolation of the
    gap.  Returns ``inf`` if nothing crosses before ``t_max``.
    """
    xs = np.linspace(x_range[0], x_range[1], samples)
    us = oracle.initial(xs)
    b = oracle.b
    h = t_max / steps

    def rhs(x, u):
        return wave_speed(u) * np.ones_like(u), -b * u * u

    gap = np.diff(xs)
    for n in range(steps):
        k1x, k1u = rhs(xs, us)
        k2x, k2u = rhs(xs + 0.5 * h * k1x, us + 0.5 * h * k1u)
        k3x, k3u = rhs(xs + 0.5 * h * k2x, us + 0.5 * h * k2u)
        k4x, k4u = rhs(xs + h * k3x, us + h * k3u)
        xs = xs + h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
        us = us + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u)
        new_gap = np.diff(xs)
        crossed = new_gap <= 0
        if crossed.any():
            frac = gap[crossed] / (gap[crossed] - new_gap[crossed])
            return float(n * h + h * frac.min())
        gap = new_gap
    return np.inf


def self_checks():
    """Run the oracle checks; returns (name, passed, detail) triples."""
    results = []
    plateau = MocOracle(lambda x: np.ones_like(x), 0.5, 1.0, 0.0)
    x = np.linspace(4.0, 9.0, 11)
    u0 = moc_scalar_solution(plateau, 0.5, x)
    u1 = moc_scalar_solution(plateau, 1.25, x + 0.75)
    diff = float(np.max(np.abs(u1 - u0)))
    results.append(("transport identity (b=0)", diff == 0.0, f"max diff {diff:.3e}"))

    damped = MocOracle(lambda x: np.ones_like(x), 0.5, 1.0, 0.1)
    got = moc_scalar_solution(damped, 2.0, 5.0)
    want = 1.0 / (0.1 * 2.0 + 1.0)
    results.append(("damped plateau", abs(got - want) <= 1e-12, f"{got!r} vs {want!r}"))

    bump = MocOracle(lambda x: np.exp(-(x - 2.0) ** 2), 0.5, 1.0, 0.0)
    t_star = critical_time(bump, 1.0)
    t_num = characteristic_crossing_time(bump, lambda u: u, t_max=3.0, steps=3000)
    rel = abs(t_num - t_star) / t_star
    results.append(("critical time vs characteristics", rel <= 0.02,
                    f"t*={t_star:.6g}, integrated {t_num:.6g}, rel {rel:.2e}"))
    return results
