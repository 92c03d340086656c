# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 core for the coupled Bloch/cavity equations.

Hot loop only; chunking, snapshots and record assembly stay in
simulator.py.  The pure-NumPy twin in _core_py.py keeps an identical
signature so the two are interchangeable.
"""

import numpy as np

from libc.math cimport fabs, sqrt

ctypedef double complex cplx


cdef inline cplx _deriv(Py_ssize_t n,
                        double[::1] su, double[::1] sv, double[::1] sw,
                        cplx so, cplx oin,
                        double[::1] delta,
                        double kappa, double sqrt_kappa, double fsr,
                        double src_w, cplx jimag,
                        double[::1] du, double[::1] dv, double[::1] dw) noexcept nogil:
    cdef Py_ssize_t k
    cdef double s_u = 0.0, s_v = 0.0
    cdef double o_re = so.real, o_im = so.imag
    for k in range(n):
        s_u += su[k]
        s_v += sv[k]
        du[k] = -delta[k] * sv[k] - o_im * sw[k]
        dv[k] = delta[k] * su[k] + o_re * sw[k]
        dw[k] = -o_re * sv[k] + o_im * su[k]
    return fsr * (-0.5 * kappa * so + sqrt_kappa * oin + src_w * (s_v - jimag * s_u))


def run_segment(double[::1] u, double[::1] v, double[::1] w,
                cplx omega,
                double[::1] delta, double d_delta,
                double kappa, double alpha_l, double fsr,
                cplx[::1] omega_in_half,
                double dt, Py_ssize_t n_steps,
                cplx[::1] omega_trace):
    """Advance (u, v, w, omega) by n_steps fixed RK4 steps, in place.

    omega_in_half holds the drive envelope at half-step resolution
    (2*n_steps + 1 values); omega_trace receives omega after each step.
    Returns (omega, max |U^2+V^2+W^2 - 1| seen after any step).
    """
    cdef Py_ssize_t n = u.shape[0]
    if v.shape[0] != n or w.shape[0] != n or delta.shape[0] != n:
        raise ValueError("state and grid arrays must share one length")
    if omega_in_half.shape[0] < 2 * n_steps + 1:
        raise ValueError("need 2*n_steps + 1 drive samples")
    if omega_trace.shape[0] < n_steps:
        raise ValueError("trace buffer too small for n_steps values")

    buf = np.empty((9, n))
    cdef double[:, ::1] B = buf
    cdef double[::1] ku = B[0]
    cdef double[::1] kv = B[1]
    cdef double[::1] kw = B[2]
    cdef double[::1] su = B[3]
    cdef double[::1] sv = B[4]
    cdef double[::1] sw = B[5]
    cdef double[::1] au = B[6]
    cdef double[::1] av = B[7]
    cdef double[::1] aw = B[8]

    cdef cplx so, ko, ao, om = omega
    cdef cplx jimag = 1j
    cdef double sqk = sqrt(kappa)
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef double src_w = alpha_l * d_delta
    cdef double max_dev = 0.0, dev, nrm
    cdef Py_ssize_t i, k, base

    with nogil:
        for i in range(n_steps):
            base = 2 * i
            ko = _deriv(n, u, v, w, om, omega_in_half[base], delta,
                        kappa, sqk, fsr, src_w, jimag, ku, kv, kw)
            ao = ko
            for k in range(n):
                au[k] = ku[k]
                av[k] = kv[k]
                aw[k] = kw[k]
                su[k] = u[k] + half * ku[k]
                sv[k] = v[k] + half * kv[k]
                sw[k] = w[k] + half * kw[k]
            so = om + half * ko

            ko = _deriv(n, su, sv, sw, so, omega_in_half[base + 1], delta,
                        kappa, sqk, fsr, src_w, jimag, ku, kv, kw)
            ao = ao + 2.0 * ko
            for k in range(n):
                au[k] += 2.0 * ku[k]
                av[k] += 2.0 * kv[k]
                aw[k] += 2.0 * kw[k]
                su[k] = u[k] + half * ku[k]
                sv[k] = v[k] + half * kv[k]
                sw[k] = w[k] + half * kw[k]
            so = om + half * ko

            ko = _deriv(n, su, sv, sw, so, omega_in_half[base + 1], delta,
                        kappa, sqk, fsr, src_w, jimag, ku, kv, kw)
            ao = ao + 2.0 * ko
            for k in range(n):
                au[k] += 2.0 * ku[k]
                av[k] += 2.0 * kv[k]
                aw[k] += 2.0 * kw[k]
                su[k] = u[k] + dt * ku[k]
                sv[k] = v[k] + dt * kv[k]
                sw[k] = w[k] + dt * kw[k]
            so = om + dt * ko

            ko = _deriv(n, su, sv, sw, so, omega_in_half[base + 2], delta,
                        kappa, sqk, fsr, src_w, jimag, ku, kv, kw)
            for k in range(n):
                u[k] += sixth * (au[k] + ku[k])
                v[k] += sixth * (av[k] + kv[k])
                w[k] += sixth * (aw[k] + kw[k])
                nrm = u[k] * u[k] + v[k] * v[k] + w[k] * w[k]
                dev = fabs(nrm - 1.0)
                if dev > max_dev:
                    max_dev = dev
            om = om + sixth * (ao + ko)
            omega_trace[i] = om

    return om, max_dev
