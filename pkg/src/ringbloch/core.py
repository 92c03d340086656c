"""Shared parameter and state containers for the ring-cavity ensemble model.

Units policy: every rate, detuning and Rabi frequency is an angular
frequency in rad/s.  The one exception is the cavity free spectral range
``fsr``, which is kept as an ordinary frequency in s^-1 (cycles per
second); the 2*pi lives inside the mirror transmission ``kappa``, so the
cavity linewidth comes out as ``2 * kappa * fsr`` in rad/s.

All containers are plain value data: copying them is cheap and they hold
no shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: Relative tolerance used to decide whether a cavity counts as matched.
MATCH_TOL = 1e-9


class ConfigError(ValueError):
    """A scenario or simulation configuration failed validation."""


class ZeroAreaError(ValueError):
    """A functional that normalizes by the pulse area got a ~zero-area waveform."""


class WindowTooShortError(ValueError):
    """A requested record window does not cover the pulse support."""


class DimensionMismatchError(ValueError):
    """State arrays and detuning grid disagree in length."""


class IntegrationBlowupError(RuntimeError):
    """The integrator produced non-finite values."""


@dataclass(frozen=True)
class CavityParams:
    """Ring-cavity parameters.

    kappa: intensity transmission of the entrance mirror, in (0, 1).
    fsr: free spectral range in s^-1 (ordinary frequency).
    alpha_l: dimensionless round-trip absorption, >= 0.
    """

    kappa: float
    fsr: float
    alpha_l: float

    def __post_init__(self):
        if not 0.0 < self.kappa < 1.0:
            raise ValueError(f"kappa must be in (0, 1), got {self.kappa}")
        if self.fsr <= 0.0:
            raise ValueError(f"fsr must be positive, got {self.fsr}")
        if self.alpha_l < 0.0:
            raise ValueError(f"alpha_l must be non-negative, got {self.alpha_l}")

    @property
    def finesse(self) -> float:
        return 2.0 * math.pi / self.kappa

    @property
    def mismatch(self) -> float:
        """alpha_l * 2*pi / kappa - 1; zero for a matched cavity."""
        return self.alpha_l * 2.0 * math.pi / self.kappa - 1.0

    def is_matched(self, tol: float = MATCH_TOL) -> bool:
        return abs(self.mismatch) <= tol


def matched(params: CavityParams, tol: float = MATCH_TOL) -> tuple[bool, float]:
    """Return (is_matched, mismatch) for the impedance-matching condition.

    The cavity is matched when the round-trip absorption equals kappa/2pi,
    i.e. the mismatch ``alpha_l * 2*pi / kappa - 1`` vanishes.
    """
    m = params.mismatch
    return abs(m) <= tol, m


def cavity_linewidth(params: CavityParams) -> float:
    """FWHM of the matched-cavity reflection dip, ``2 * kappa * fsr`` in rad/s."""
    return 2.0 * params.kappa * params.fsr


@dataclass(frozen=True)
class DetuningGrid:
    """Uniform, symmetric discretization of the inhomogeneous detuning axis.

    Points sit at ``(k - (n-1)/2) * spacing`` for k = 0..n-1, so the grid
    is mirror symmetric for any parity; odd n puts one class exactly on
    resonance.  The flat inhomogeneous weight is folded into the quadrature
    weight ``spacing``.
    """

    n: int
    spacing: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one detuning class, got n={self.n}")
        if self.spacing <= 0.0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")

    @property
    def points(self) -> np.ndarray:
        return (np.arange(self.n) - 0.5 * (self.n - 1)) * self.spacing

    @property
    def half_span(self) -> float:
        return 0.5 * self.n * self.spacing

    @property
    def recurrence_time(self) -> float:
        """Time 2*pi/spacing after which the discrete comb rephases."""
        return 2.0 * math.pi / self.spacing


@dataclass
class EnsembleState:
    """Per-detuning Bloch components plus the intracavity field amplitude.

    u, v: in-phase/quadrature coherences; w: population inversion.
    omega: intracavity Rabi frequency (complex-capable; for a real drive the
    imaginary part stays at rounding level and serves as an error monitor).
    """

    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    omega: complex = 0j

    @classmethod
    def ground(cls, n: int) -> "EnsembleState":
        """All atoms in the ground state, empty cavity."""
        return cls(
            u=np.zeros(n), v=np.zeros(n), w=np.full(n, -1.0), omega=0j
        )

    @property
    def n(self) -> int:
        return len(self.u)

    def copy(self) -> "EnsembleState":
        return EnsembleState(self.u.copy(), self.v.copy(), self.w.copy(), self.omega)

    def norm_error(self) -> float:
        """max_k |U^2 + V^2 + W^2 - 1|, exactly conserved by the decay-free model."""
        return float(np.abs(self.u**2 + self.v**2 + self.w**2 - 1.0).max())

    def require_size(self, n: int):
        if not (len(self.u) == len(self.v) == len(self.w) == n):
            raise DimensionMismatchError(
                f"state arrays of length {len(self.u)}/{len(self.v)}/{len(self.w)} "
                f"do not match grid size {n}"
            )


@dataclass
class Waveform:
    """Uniformly sampled envelope: value ``samples[i]`` at ``t0 + i*dt``."""

    t0: float
    dt: float
    samples: np.ndarray

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        self.samples = np.asarray(self.samples)
        if self.samples.ndim != 1:
            raise ValueError("samples must be one-dimensional")

    @property
    def n(self) -> int:
        return len(self.samples)

    @property
    def t_end(self) -> float:
        return self.t0 + (self.n - 1) * self.dt

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    def interp(self, t):
        """Linear interpolation of the envelope; zero outside the record."""
        t = np.asarray(t, dtype=float)
        ts = self.times
        s = self.samples
        if np.iscomplexobj(s):
            re = np.interp(t, ts, s.real, left=0.0, right=0.0)
            im = np.interp(t, ts, s.imag, left=0.0, right=0.0)
            return re + 1j * im
        return np.interp(t, ts, s, left=0.0, right=0.0)

    def require_vanishing_ends(self, tol: float = 1e-6):
        """Raise unless the envelope is <= tol * peak at both record ends."""
        peak = float(np.abs(self.samples).max(initial=0.0))
        if peak == 0.0:
            return
        lead, tail = abs(self.samples[0]), abs(self.samples[-1])
        if lead > tol * peak or tail > tol * peak:
            raise ConfigError(
                f"waveform does not vanish at the record ends "
                f"(|ends|/peak = {lead / peak:.2e}, {tail / peak:.2e}; limit {tol:.0e})"
            )


@dataclass
class SimulationRecord:
    """Full time series of a run plus the final ensemble state.

    omega_out satisfies ``omega_out = sqrt(kappa)*omega_cav - omega_in``
    sample by sample, exactly as recorded.
    """

    time: np.ndarray
    omega_in: Waveform
    omega_cav: Waveform
    omega_out: Waveform
    final_state: EnsembleState
    snapshots: list[tuple[float, EnsembleState]] = field(default_factory=list)
    max_norm_error: float = 0.0
    config: object | None = None
