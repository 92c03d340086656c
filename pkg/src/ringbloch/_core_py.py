"""Pure-NumPy twin of the compiled RK4 core; same signature as _core.run_segment."""

import math

import numpy as np


def run_segment(u, v, w, omega, delta, d_delta, kappa, alpha_l, fsr,
                omega_in_half, dt, n_steps, omega_trace):
    n = u.shape[0]
    if v.shape[0] != n or w.shape[0] != n or delta.shape[0] != n:
        raise ValueError("state and grid arrays must share one length")
    if omega_in_half.shape[0] < 2 * n_steps + 1:
        raise ValueError("need 2*n_steps + 1 drive samples")
    if omega_trace.shape[0] < n_steps:
        raise ValueError("trace buffer too small for n_steps values")

    sqk = math.sqrt(kappa)
    half = 0.5 * dt
    sixth = dt / 6.0
    src_w = alpha_l * d_delta
    om = complex(omega)
    max_dev = 0.0

    def deriv(su, sv, sw, so, oin):
        o_re, o_im = so.real, so.imag
        du = -delta * sv - o_im * sw
        dv = delta * su + o_re * sw
        dw = -o_re * sv + o_im * su
        do = fsr * (-0.5 * kappa * so + sqk * oin + src_w * (sv.sum() - 1j * su.sum()))
        return du, dv, dw, do

    for i in range(n_steps):
        b = 2 * i
        k1u, k1v, k1w, k1o = deriv(u, v, w, om, omega_in_half[b])
        k2u, k2v, k2w, k2o = deriv(u + half * k1u, v + half * k1v, w + half * k1w,
                                   om + half * k1o, omega_in_half[b + 1])
        k3u, k3v, k3w, k3o = deriv(u + half * k2u, v + half * k2v, w + half * k2w,
                                   om + half * k2o, omega_in_half[b + 1])
        k4u, k4v, k4w, k4o = deriv(u + dt * k3u, v + dt * k3v, w + dt * k3w,
                                   om + dt * k3o, omega_in_half[b + 2])
        u += sixth * (k1u + 2.0 * (k2u + k3u) + k4u)
        v += sixth * (k1v + 2.0 * (k2v + k3v) + k4v)
        w += sixth * (k1w + 2.0 * (k2w + k3w) + k4w)
        om = om + sixth * (k1o + 2.0 * (k2o + k3o) + k4o)
        omega_trace[i] = om
        dev = float(np.abs(u * u + v * v + w * w - 1.0).max())
        if dev > max_dev:
            max_dev = dev

    return om, max_dev
