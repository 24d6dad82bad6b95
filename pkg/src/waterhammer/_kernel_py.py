"""Pure numpy step kernels (fallback for the compiled ``_kernel`` module).

Both kernels write interior nodes 1..n-2 of the output arrays and leave the
end nodes untouched.  ``a`` is K/rho_a, ``C`` the friction coefficient and
``cubic`` the coefficient of the v^3 term in the second time derivative of v
(C**2 for the exact expansion).
"""

import numpy as np

BACKEND = "python"


def lw_step(rho, v, rho_out, v_out, dt, dx, a, C, cubic):
    r = rho[1:-1]
    u = v[1:-1]
    rx = (rho[2:] - rho[:-2]) / (2.0 * dx)
    ux = (v[2:] - v[:-2]) / (2.0 * dx)
    rxx = (rho[2:] - 2.0 * r + rho[:-2]) / (dx * dx)
    uxx = (v[2:] - 2.0 * u + v[:-2]) / (dx * dx)
    au = np.abs(u)
    uau = u * au
    inv_r = 1.0 / r

    rt = -r * ux - u * rx
    ut = -u * ux - a * inv_r * rx - C * uau

    rtt = (
        2.0 * r * ux * ux
        + 2.0 * r * u * uxx
        + 4.0 * u * ux * rx
        + 2.0 * C * au * r * ux
        + C * uau * rx
        + (a + u * u) * rxx
    )
    utt = (
        2.0 * u * ux * ux
        + (a + u * u) * uxx
        + 5.0 * C * uau * ux
        + 2.0 * a * inv_r * rx * ux
        - 2.0 * a * u * inv_r * inv_r * rx * rx
        + 2.0 * a * u * inv_r * rxx
        + 2.0 * C * au * a * inv_r * rx
        + 2.0 * cubic * u * u * u
    )
    half = 0.5 * dt * dt
    rho_out[1:-1] = r + dt * rt + half * rtt
    v_out[1:-1] = u + dt * ut + half * utt


def upwind_step(rho, v, rho_out, v_out, dt, dx, a, C):
    """First-order upwinding of the Riemann invariants v +/- c log(rho)."""
    c = np.sqrt(a)
    logr = np.log(rho)
    wp = v + c * logr
    wm = v - c * logr
    u = v[1:-1]
    src = -C * u * np.abs(u)
    wp_new = wp[1:-1] - dt / dx * (u + c) * (wp[1:-1] - wp[:-2]) + dt * src
    wm_new = wm[1:-1] - dt / dx * (u - c) * (wm[2:] - wm[1:-1]) + dt * src
    v_out[1:-1] = 0.5 * (wp_new + wm_new)
    rho_out[1:-1] = np.exp((wp_new - wm_new) / (2.0 * c))
