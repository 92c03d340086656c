"""Time-domain integration of the coupled Bloch/cavity system.

Model, for n detuning classes with flat weight d_delta:

    dU_k/dt = -Delta_k V_k
    dV_k/dt =  Delta_k U_k + Omega W_k
    dW_k/dt = -Omega V_k
    (1/fsr) dOmega/dt = -(kappa/2) Omega + sqrt(kappa) Omega_in
                        - i alpha_l sum_k (U_k + i V_k) d_delta
    Omega_out = sqrt(kappa) Omega - Omega_in

The field is integrated as a complex number.  For a complex drive the
coherences are advanced through R = U + iV with dR/dt = i Delta R
+ i Omega W and dW/dt = -Im(Omega* R), which reduces to the equations
above when Im Omega = 0 and conserves U^2 + V^2 + W^2 exactly; with a
real drive and a symmetric grid, Im Omega stays at rounding level and is
an error monitor, not physics.

Integration is fixed-step classical RK4 (bit-reproducible records); the
drive is evaluated at step midpoints by linear interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backends
from .core import (
    CavityParams,
    ConfigError,
    DetuningGrid,
    EnsembleState,
    IntegrationBlowupError,
    SimulationRecord,
    Waveform,
    ZeroAreaError,
)
from .pulse import area as pulse_area
from .pulse import rms_width


@dataclass
class SimulationConfig:
    """One run: cavity, detuning grid, drive waveform, step and window."""

    params: CavityParams
    grid: DetuningGrid
    input: Waveform
    dt: float
    window: tuple[float, float]
    snapshot_stride: int = 0

    @property
    def n_steps(self) -> int:
        t0, t1 = self.window
        return int(round((t1 - t0) / self.dt))

    def validate(self):
        """Fail fast with every violated constraint listed."""
        problems = []
        t0, t1 = self.window
        if self.dt <= 0.0:
            problems.append(f"dt must be positive, got {self.dt}")
        if t1 <= t0:
            problems.append(f"window end {t1:g} must exceed start {t0:g}")
        if self.snapshot_stride < 0:
            problems.append(f"snapshot_stride must be >= 0, got {self.snapshot_stride}")
        if self.dt > 0.0 and t1 > t0:
            # resolve the loaded-cavity field decay (time scale 2/(kappa*fsr)),
            # the fastest detuning class, and the pulse itself
            cavity_limit = 0.1 / (self.params.kappa * self.params.fsr)
            if self.dt > cavity_limit:
                problems.append(
                    f"dt={self.dt:g} s does not resolve the cavity decay "
                    f"(limit {cavity_limit:g} s)"
                )
            delta_max = abs(self.grid.points).max()
            if delta_max > 0.0 and self.dt > 0.05 / delta_max:
                problems.append(
                    f"dt={self.dt:g} s does not resolve the fastest detuning "
                    f"(limit {0.05 / delta_max:g} s)"
                )
            if (t1 - t0) >= self.grid.recurrence_time:
                problems.append(
                    f"window {t1 - t0:g} s reaches the grid recurrence time "
                    f"{self.grid.recurrence_time:g} s (comb echo would enter the record)"
                )
            try:
                with np.errstate(all="ignore"):  # non-finite drives caught later
                    sigma_in = rms_width(self.input).sigma
            except ZeroAreaError:
                sigma_in = None  # zero drive: pulse-based limits do not apply
            if sigma_in is not None and math.isfinite(sigma_in) and sigma_in > 0.0:
                if self.dt > sigma_in / 100.0:
                    problems.append(
                        f"dt={self.dt:g} s does not resolve the pulse "
                        f"(limit sigma/100 = {sigma_in / 100.0:g} s)"
                    )
                if self.params.alpha_l > 0.0 and self.grid.half_span < 8.0 / sigma_in:
                    problems.append(
                        f"grid half-span {self.grid.half_span:g} rad/s is below 8x the "
                        f"pulse spectral rms width {1.0 / sigma_in:g} rad/s"
                    )
            try:
                self.input.require_vanishing_ends()
            except ConfigError as exc:
                problems.append(str(exc))
        if problems:
            raise ConfigError("invalid simulation config:\n  " + "\n  ".join(problems))


def rhs(state: EnsembleState, omega_in, params: CavityParams, grid: DetuningGrid) -> EnsembleState:
    """Time derivative of the coupled system (reference implementation).

    Returned in an EnsembleState container: u/v/w hold dU/dt etc. and
    omega holds dOmega/dt.
    """
    state.require_size(grid.n)
    delta = grid.points
    om = complex(state.omega)
    o_re, o_im = om.real, om.imag
    du = -delta * state.v - o_im * state.w
    dv = delta * state.u + o_re * state.w
    dw = -o_re * state.v + o_im * state.u
    source = params.alpha_l * grid.spacing * (state.v.sum() - 1j * state.u.sum())
    domega = params.fsr * (
        -0.5 * params.kappa * om + math.sqrt(params.kappa) * complex(omega_in) + source
    )
    return EnsembleState(du, dv, dw, domega)


def step_rk4(state: EnsembleState, t: float, dt: float, input_fn,
             params: CavityParams, grid: DetuningGrid,
             clamp_field: bool = False) -> EnsembleState:
    """One classical RK4 step; input_fn(t) supplies the drive envelope.

    clamp_field freezes Omega (no cavity update), for Bloch-only checks
    against the Rabi-flopping closed form.
    """

    def f(s, tt):
        d = rhs(s, input_fn(tt), params, grid)
        if clamp_field:
            d.omega = 0j
        return d

    def shift(s, a, d):
        return EnsembleState(s.u + a * d.u, s.v + a * d.v, s.w + a * d.w,
                             s.omega + a * d.omega)

    k1 = f(state, t)
    k2 = f(shift(state, 0.5 * dt, k1), t + 0.5 * dt)
    k3 = f(shift(state, 0.5 * dt, k2), t + 0.5 * dt)
    k4 = f(shift(state, dt, k3), t + dt)
    sixth = dt / 6.0
    return EnsembleState(
        state.u + sixth * (k1.u + 2.0 * (k2.u + k3.u) + k4.u),
        state.v + sixth * (k1.v + 2.0 * (k2.v + k3.v) + k4.v),
        state.w + sixth * (k1.w + 2.0 * (k2.w + k3.w) + k4.w),
        state.omega + sixth * (k1.omega + 2.0 * (k2.omega + k3.omega) + k4.omega),
    )


def simulate(config: SimulationConfig, backend: str | None = None) -> SimulationRecord:
    """Integrate from the ground state over the window and record all fields."""
    config.validate()
    kernel = backends.get_kernel(backend)
    params, grid = config.params, config.grid
    t0 = config.window[0]
    n_steps = config.n_steps
    dt = config.dt

    half_times = t0 + 0.5 * dt * np.arange(2 * n_steps + 1)
    drive_half = np.ascontiguousarray(config.input.interp(half_times), dtype=np.complex128)
    delta = np.ascontiguousarray(grid.points)

    state = EnsembleState.ground(grid.n)
    omega = 0j
    trace = np.empty(n_steps + 1, dtype=np.complex128)
    trace[0] = 0j
    max_dev = 0.0
    snapshots: list[tuple[float, EnsembleState]] = []

    stride = config.snapshot_stride if config.snapshot_stride > 0 else n_steps
    done = 0
    while done < n_steps:
        seg = min(stride, n_steps - done)
        omega, dev = kernel.run_segment(
            state.u, state.v, state.w, omega,
            delta, grid.spacing,
            params.kappa, params.alpha_l, params.fsr,
            drive_half[2 * done: 2 * (done + seg) + 1],
            dt, seg,
            trace[done + 1: done + seg + 1],
        )
        max_dev = max(max_dev, dev)
        done += seg
        if not (np.isfinite(trace[done]) and np.isfinite(state.w).all()):
            raise IntegrationBlowupError(
                f"non-finite state at t = {t0 + done * dt:g} s "
                f"(omega = {trace[done]}); reduce dt or check the config"
            )
        if config.snapshot_stride > 0 and done < n_steps:
            snapshots.append((t0 + done * dt, state.copy()))
    state.omega = omega

    in_nodes = drive_half[::2].copy()
    if not np.iscomplexobj(config.input.samples):
        in_nodes = in_nodes.real
    out_nodes = math.sqrt(params.kappa) * trace - in_nodes

    time = t0 + dt * np.arange(n_steps + 1)
    return SimulationRecord(
        time=time,
        omega_in=Waveform(t0, dt, in_nodes),
        omega_cav=Waveform(t0, dt, trace),
        omega_out=Waveform(t0, dt, out_nodes),
        final_state=state,
        snapshots=snapshots,
        max_norm_error=max_dev,
        config=config,
    )


def stored_energy(state: EnsembleState, params: CavityParams, grid: DetuningGrid) -> float:
    """Energy held in the atomic excitation, (alpha_l/2pi) sum (W+1)/2 d_delta."""
    state.require_size(grid.n)
    return float(
        params.alpha_l / (2.0 * math.pi) * 0.5 * np.sum(state.w + 1.0) * grid.spacing
    )


def absorbed_quanta(state: EnsembleState, params: CavityParams, grid: DetuningGrid) -> float:
    """alpha_l * sum (W+1) d_delta, the excitation side of the exact quanta balance.

    Multiplying the field equation by Omega* and integrating gives
    alpha_l * sum (W_final+1) d_delta = (U_in - U_out)/2 for records whose
    field vanishes at both window ends.
    """
    state.require_size(grid.n)
    return float(params.alpha_l * np.sum(state.w + 1.0) * grid.spacing)
