# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled step kernels; same contract as ``_kernel_py``."""

from libc.math cimport exp, fabs, log, sqrt

BACKEND = "cython"


def lw_step(const double[::1] rho, const double[::1] v,
            double[::1] rho_out, double[::1] v_out,
            double dt, double dx, double a, double C, double cubic):
    cdef Py_ssize_t n = rho.shape[0]
    cdef Py_ssize_t j
    cdef double r, u, rx, ux, rxx, uxx, au, uau, inv_r, rt, ut, rtt, utt
    cdef double inv2dx = 1.0 / (2.0 * dx)
    cdef double invdx2 = 1.0 / (dx * dx)
    cdef double half = 0.5 * dt * dt
    if rho_out.shape[0] != n or v.shape[0] != n or v_out.shape[0] != n:
        raise ValueError("array lengths differ")
    with nogil:
        for j in range(1, n - 1):
            r = rho[j]
            u = v[j]
            rx = (rho[j + 1] - rho[j - 1]) * inv2dx
            ux = (v[j + 1] - v[j - 1]) * inv2dx
            rxx = (rho[j + 1] - 2.0 * r + rho[j - 1]) * invdx2
            uxx = (v[j + 1] - 2.0 * u + v[j - 1]) * invdx2
            au = fabs(u)
            uau = u * au
            inv_r = 1.0 / r
            rt = -r * ux - u * rx
            ut = -u * ux - a * inv_r * rx - C * uau
            rtt = (2.0 * r * ux * ux
                   + 2.0 * r * u * uxx
                   + 4.0 * u * ux * rx
                   + 2.0 * C * au * r * ux
                   + C * uau * rx
                   + (a + u * u) * rxx)
            utt = (2.0 * u * ux * ux
                   + (a + u * u) * uxx
                   + 5.0 * C * uau * ux
                   + 2.0 * a * inv_r * rx * ux
                   - 2.0 * a * u * inv_r * inv_r * rx * rx
                   + 2.0 * a * u * inv_r * rxx
                   + 2.0 * C * au * a * inv_r * rx
                   + 2.0 * cubic * u * u * u)
            rho_out[j] = r + dt * rt + half * rtt
            v_out[j] = u + dt * ut + half * utt


def upwind_step(const double[::1] rho, const double[::1] v,
                double[::1] rho_out, double[::1] v_out,
                double dt, double dx, double a, double C):
    cdef Py_ssize_t n = rho.shape[0]
    cdef Py_ssize_t j
    cdef double c = sqrt(a)
    cdef double lam = dt / dx
    cdef double u, src, wp, wm, wp_l, wm_r, wp_new, wm_new
    if rho_out.shape[0] != n or v.shape[0] != n or v_out.shape[0] != n:
        raise ValueError("array lengths differ")
    with nogil:
        for j in range(1, n - 1):
            u = v[j]
            src = -C * u * fabs(u)
            wp = u + c * log(rho[j])
            wm = u - c * log(rho[j])
            wp_l = v[j - 1] + c * log(rho[j - 1])
            wm_r = v[j + 1] - c * log(rho[j + 1])
            wp_new = wp - lam * (u + c) * (wp - wp_l) + dt * src
            wm_new = wm - lam * (u - c) * (wm_r - wm) + dt * src
            v_out[j] = 0.5 * (wp_new + wm_new)
            rho_out[j] = exp((wp_new - wm_new) / (2.0 * c))
