"""Strong-pulse excitation of an inhomogeneously broadened two-level ensemble
inside an impedance-matched ring cavity: time-domain Bloch/cavity integration
cross-checked against the intracavity area theorem, quanta balance and the
weak-signal spectral response."""

from .analysis import (
    RunDiagnostics,
    SweepPoint,
    area_sweep,
    diagnose,
    measured_transfer,
    xcorr_delay,
)
from .area_theorem import AreaSolution, all_roots, area_curve, intracavity_area
from .backends import available_backends, default_backend, has_compiled
from .core import (
    CavityParams,
    ConfigError,
    DetuningGrid,
    DimensionMismatchError,
    EnsembleState,
    IntegrationBlowupError,
    SimulationRecord,
    Waveform,
    WindowTooShortError,
    ZeroAreaError,
    cavity_linewidth,
    matched,
)
from .linear_response import (
    ResponsePoint,
    group_delay,
    reflection,
    reflection_generalized,
)
from .pulse import GaussianPulseSpec, WidthResult, area, energy, make_gaussian, rms_width
from .simulator import (
    SimulationConfig,
    absorbed_quanta,
    rhs,
    simulate,
    step_rk4,
    stored_energy,
)

__version__ = "0.1.0"

__all__ = [
    "AreaSolution",
    "CavityParams",
    "ConfigError",
    "DetuningGrid",
    "DimensionMismatchError",
    "EnsembleState",
    "GaussianPulseSpec",
    "IntegrationBlowupError",
    "ResponsePoint",
    "RunDiagnostics",
    "SimulationConfig",
    "SimulationRecord",
    "SweepPoint",
    "Waveform",
    "WidthResult",
    "WindowTooShortError",
    "ZeroAreaError",
    "absorbed_quanta",
    "all_roots",
    "area",
    "area_curve",
    "area_sweep",
    "available_backends",
    "cavity_linewidth",
    "default_backend",
    "diagnose",
    "energy",
    "group_delay",
    "has_compiled",
    "intracavity_area",
    "make_gaussian",
    "matched",
    "measured_transfer",
    "reflection",
    "reflection_generalized",
    "rhs",
    "rms_width",
    "simulate",
    "step_rk4",
    "stored_energy",
    "xcorr_delay",
]
