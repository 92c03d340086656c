"""Diagnostics tying simulation records to the conservation rules.

Everything here is pure post-processing of SimulationRecords; records can
be diagnosed in parallel.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .area_theorem import intracavity_area
from .core import CavityParams, DetuningGrid, SimulationRecord, Waveform, ZeroAreaError
from .pulse import area, energy, rms_width
from .simulator import SimulationConfig, absorbed_quanta, simulate, stored_energy


@dataclass(frozen=True)
class RunDiagnostics:
    """Scalar summary of one run; undefined widths are reported as nan."""

    theta_in: float
    theta_cav: float
    theta_out: float
    u_in: float
    u_out: float
    u_w_final: float
    quanta_residual: float
    sigma_in: float
    sigma_out: float
    mu_out: float
    elongation: float
    area_theorem_residual: float


def diagnose(record: SimulationRecord, params: CavityParams, grid: DetuningGrid) -> RunDiagnostics:
    """Areas, energies, quanta balance and width diagnostics of a record.

    The quanta residual uses the exact identity
    alpha_l * sum (W+1) d_delta = (U_in - U_out)/2, normalized by U_in
    (nan for a zero-energy drive).  sigma_out is nan when the outgoing
    area is too small for the width to mean anything.
    """
    theta_in = area(record.omega_in)
    theta_cav = area(record.omega_cav)
    theta_out = area(record.omega_out)
    u_in = energy(record.omega_in)
    u_out = energy(record.omega_out)
    u_w = stored_energy(record.final_state, params, grid)

    if u_in > 0.0:
        lhs = absorbed_quanta(record.final_state, params, grid)
        quanta_residual = (lhs - 0.5 * (u_in - u_out)) / u_in
    else:
        quanta_residual = math.nan

    try:
        sigma_in, _ = rms_width(record.omega_in)
    except ZeroAreaError:
        sigma_in = math.nan
    try:
        # outgoing envelopes change sign routinely; the ill-conditioning
        # warning from rms_width carries no information here
        sigma_out, mu_out = rms_width(record.omega_out, warn_ill_conditioned=False)
    except ZeroAreaError:
        sigma_out, mu_out = math.nan, math.nan

    elongation = sigma_out / sigma_in if sigma_in and not math.isnan(sigma_in) else math.nan
    residual = (
        0.5 * params.kappa * theta_cav
        + math.pi * params.alpha_l * math.sin(theta_cav)
        - math.sqrt(params.kappa) * theta_in
    )
    return RunDiagnostics(
        theta_in=theta_in,
        theta_cav=theta_cav,
        theta_out=theta_out,
        u_in=u_in,
        u_out=u_out,
        u_w_final=u_w,
        quanta_residual=quanta_residual,
        sigma_in=sigma_in,
        sigma_out=sigma_out,
        mu_out=mu_out,
        elongation=elongation,
        area_theorem_residual=residual,
    )


@dataclass(frozen=True)
class SweepPoint:
    """One row of an incoming-area sweep (simulated vs analytic areas)."""

    theta_in: float
    theta_cav_sim: float
    theta_cav_theory: float
    theta_out_sim: float
    theta_out_theory: float
    sigma_out: float
    elongation: float
    quanta_residual: float

    @property
    def curve_deviation(self) -> float:
        return max(
            abs(self.theta_cav_sim - self.theta_cav_theory),
            abs(self.theta_out_sim - self.theta_out_theory),
        )


def area_sweep(areas, base_config: SimulationConfig, threads: int = 1,
               backend: str | None = None) -> list[SweepPoint]:
    """Run the simulator across incoming areas and compare with the analytic curve.

    Each point rescales the base drive amplitude (duration fixed, amplitude
    varied).  Points are independent and run on a thread pool; results keep
    the input order.
    """
    base_area = area(base_config.input)
    if base_area == 0.0:
        raise ValueError("base config must carry a nonzero-area drive to rescale")

    def one(target: float) -> SweepPoint:
        scale = target / base_area
        drive = Waveform(base_config.input.t0, base_config.input.dt,
                         base_config.input.samples * scale)
        cfg = replace(base_config, input=drive)
        rec = simulate(cfg, backend=backend)
        d = diagnose(rec, cfg.params, cfg.grid)
        sol = intracavity_area(max(d.theta_in, 0.0), cfg.params)
        return SweepPoint(
            theta_in=d.theta_in,
            theta_cav_sim=d.theta_cav,
            theta_cav_theory=sol.theta_cav,
            theta_out_sim=d.theta_out,
            theta_out_theory=sol.theta_out,
            sigma_out=d.sigma_out,
            elongation=d.elongation,
            quanta_residual=d.quanta_residual,
        )

    targets = [float(a) for a in areas]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, targets))
    return [one(t) for t in targets]


def measured_transfer(record: SimulationRecord) -> tuple[np.ndarray, np.ndarray]:
    """Empirical reflection spectrum Omega_out(w)/Omega_in(w) of a record.

    Returns (omega >= 0, H) in the package's X(w) = int x exp(+iwt) dt
    convention, so H is directly comparable to linear_response.reflection.
    """
    x_in = np.real(record.omega_in.samples)
    x_out = np.real(record.omega_out.samples)
    spec_in = np.fft.rfft(x_in)
    spec_out = np.fft.rfft(x_out)
    omega = 2.0 * math.pi * np.fft.rfftfreq(len(x_in), d=record.omega_in.dt)
    return omega, np.conj(spec_out / spec_in)


def xcorr_delay(a: Waveform, b: Waveform) -> tuple[float, float]:
    """Peak normalized cross-correlation of a against b and the lag of a (s).

    The lag maximizing sum_t a(t) b(t - lag) is refined by parabolic
    interpolation of the discrete correlation peak; positive lag means a
    arrives later than b.
    """
    if a.dt != b.dt:
        raise ValueError("waveforms must share one sample step")
    x = np.real(a.samples)
    y = np.real(b.samples)
    m = max(len(x), len(y))
    nfft = 1 << int(math.ceil(math.log2(2 * m)))
    c = np.fft.irfft(np.fft.rfft(x, nfft) * np.conj(np.fft.rfft(y, nfft)), nfft)
    norm = math.sqrt(float((x * x).sum()) * float((y * y).sum()))
    k = int(np.argmax(c))
    cm, c0, cp = c[k - 1], c[k], c[(k + 1) % nfft]
    denom = cm - 2.0 * c0 + cp
    shift = 0.5 * (cm - cp) / denom if denom != 0.0 else 0.0
    lag = k if k <= nfft // 2 else k - nfft
    delay = (lag + shift) * a.dt + (a.t0 - b.t0)
    return float(c0 / norm), float(delay)
