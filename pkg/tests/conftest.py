import numpy as np
import pytest

from ringbloch import CavityParams, DetuningGrid, Waveform, simulate
from ringbloch.scenarios import build_config, critical_area, default_params

# Fast desk-check scale used by the unit tests: a 0.5 us pulse in a 25 us
# window, 161 classes (recurrence 28.6 us, half-span 1.77e7 = 8.9x the
# pulse spectral rms).  The full-scale defaults live in test_acceptance.


@pytest.fixture(scope="session")
def params():
    return default_params()


@pytest.fixture(scope="session")
def small_grid():
    return DetuningGrid(n=161, spacing=2.2e5)


def small_config(area_scaled=1.0, **overrides):
    grid = overrides.pop("grid", DetuningGrid(n=161, spacing=2.2e5))
    kwargs = dict(sigma=0.5e-6, center=4.0e-6, window=(0.0, 25.0e-6), grid=grid)
    kwargs.update(overrides)
    return build_config(area_scaled=area_scaled, **kwargs)


@pytest.fixture(scope="session")
def pi_pulse_run(params, small_grid):
    """Shared small-scale run at the critical drive area."""
    cfg = small_config(area_scaled=1.0, grid=small_grid)
    return cfg, simulate(cfg)


def make_rectangular(amplitude, start, duration, t0, dt, n_samples):
    """Rectangular test pulse sampled on [t0, t0 + (n-1) dt]."""
    t = t0 + dt * np.arange(n_samples)
    samples = np.where((t >= start) & (t <= start + duration), amplitude, 0.0)
    return Waveform(t0, dt, samples)
