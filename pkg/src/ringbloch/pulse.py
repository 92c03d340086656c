"""Envelope construction and scalar pulse functionals (area, energy, rms width)."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import Waveform, WindowTooShortError, ZeroAreaError

#: The generated Gaussian must carry its ends out to at least this many sigma.
GAUSSIAN_SUPPORT_SIGMAS = 6.0


@dataclass(frozen=True)
class GaussianPulseSpec:
    """Gaussian envelope of rms duration sigma_t, target area (rad), center time."""

    sigma_t: float
    area: float
    center: float = 0.0

    def __post_init__(self):
        if self.sigma_t <= 0.0:
            raise ValueError(f"sigma_t must be positive, got {self.sigma_t}")

    @property
    def peak(self) -> float:
        """Peak Rabi frequency area / (sigma_t * sqrt(2*pi))."""
        return self.area / (self.sigma_t * math.sqrt(2.0 * math.pi))

    @property
    def spectral_rms(self) -> float:
        """Rms width of the amplitude spectrum, 1/sigma_t in rad/s."""
        return 1.0 / self.sigma_t


def make_gaussian(spec: GaussianPulseSpec, t0: float, dt: float, n_samples: int) -> Waveform:
    """Sample A*exp(-(t-tc)^2 / (2 sigma^2)) with A chosen to hit the target area.

    The record window must cover +-6 sigma around the center; the sampled
    (trapezoid) area is checked against the target to 1e-6 relative.
    """
    if n_samples < 2:
        raise ValueError("need at least two samples")
    t_end = t0 + (n_samples - 1) * dt
    lo = spec.center - GAUSSIAN_SUPPORT_SIGMAS * spec.sigma_t
    hi = spec.center + GAUSSIAN_SUPPORT_SIGMAS * spec.sigma_t
    if t0 > lo or t_end < hi:
        raise WindowTooShortError(
            f"record [{t0:g}, {t_end:g}] s clips the +-{GAUSSIAN_SUPPORT_SIGMAS:g} sigma "
            f"support [{lo:g}, {hi:g}] s of the pulse"
        )
    t = t0 + dt * np.arange(n_samples)
    x = (t - spec.center) / spec.sigma_t
    w = Waveform(t0, dt, spec.peak * np.exp(-0.5 * x * x))
    if spec.area != 0.0:
        got = area(w)
        if abs(got - spec.area) > 1e-6 * abs(spec.area):
            raise ValueError(
                f"sampled area {got:g} deviates from target {spec.area:g} "
                "by more than 1e-6 relative; dt is too coarse"
            )
    return w


def area(w: Waveform) -> float:
    """Signed pulse area, trapezoidal integral of the real part (rad)."""
    return float(np.trapezoid(np.real(w.samples), dx=w.dt))


def energy(w: Waveform) -> float:
    """Pulse energy integral of |envelope|^2 (rad^2/s)."""
    return float(np.trapezoid(np.abs(w.samples) ** 2, dx=w.dt))


class WidthResult(NamedTuple):
    sigma: float
    mu: float


def rms_width(w: Waveform, zero_area_rtol: float = 1e-9,
              warn_ill_conditioned: bool = True) -> WidthResult:
    """Rms temporal width and mean of the area-normalized envelope.

    Uses the signed distribution p(t) = envelope / area, so a sign-changing
    envelope may make the width ill-conditioned (warnings are emitted unless
    warn_ill_conditioned is off, and a negative variance yields sigma = nan).
    Raises ZeroAreaError when the net area is below zero_area_rtol times
    the integral of |envelope|.
    """
    s = np.real(w.samples)
    theta = float(np.trapezoid(s, dx=w.dt))
    abs_int = float(np.trapezoid(np.abs(s), dx=w.dt))
    if abs_int == 0.0 or abs(theta) < zero_area_rtol * abs_int:
        raise ZeroAreaError(
            f"area {theta:g} too small against integral of |envelope| {abs_int:g}; "
            "rms width undefined"
        )
    peak = float(np.abs(s).max())
    if warn_ill_conditioned and (s > 1e-12 * peak).any() and (s < -1e-12 * peak).any():
        warnings.warn(
            "envelope changes sign; rms width may be ill-conditioned",
            RuntimeWarning,
            stacklevel=2,
        )
    t = w.times
    p = s / theta
    mu = float(np.trapezoid(t * p, dx=w.dt))
    var = float(np.trapezoid((t - mu) ** 2 * p, dx=w.dt))
    if var < 0.0:
        if warn_ill_conditioned:
            warnings.warn(
                "signed-envelope variance is negative; rms width undefined",
                RuntimeWarning,
                stacklevel=2,
            )
        return WidthResult(math.nan, mu)
    return WidthResult(math.sqrt(var), mu)
