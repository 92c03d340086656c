"""Weak-signal spectral response of the loaded cavity and slow-light diagnostics.

Spectra are defined as X(w) = integral of x(t) exp(+i w t) dt throughout,
so a causal response expands as r(w) = r(0) + i w T_g with a positive
group delay T_g.  (For real signals this transform is the complex
conjugate of numpy's FFT convention.)

In the perturbative limit the flat inhomogeneous continuum acts as a pure
absorption pi*alpha_l rescaled by the (frozen) inversion W, giving

    r_W(w) = (kappa/2 + pi alpha_l W + i w/fsr) / (kappa/2 - pi alpha_l W - i w/fsr)

which reduces to the ground-state reflection at W = -1 and to
r_W(0) = (1+W)/(1-W) under matching.

Note: some derivations quote the empty-cavity group delay as
4/linewidth; the convention used here, fixed by the finite-difference
verified expansion of reflection_generalized, gives 2/linewidth at
W = -1 (the two readings differ by a factor of 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CavityParams


def reflection(omega, params: CavityParams):
    """Amplitude reflection coefficient of the ground-state ensemble (W = -1).

    Accepts a scalar or array of angular frequencies; matched cavities
    reflect nothing on resonance.
    """
    om = np.asarray(omega, dtype=float)
    half_k = 0.5 * params.kappa
    absn = math.pi * params.alpha_l
    r = (half_k - absn + 1j * om / params.fsr) / (half_k + absn - 1j * om / params.fsr)
    if np.ndim(omega) == 0:
        return complex(r)
    return r


def reflection_generalized(omega, w: float, params: CavityParams):
    """Reflection for a medium frozen at constant inversion W in [-1, 1].

    The population rescales the absorption to -W * alpha; W > 0 yields gain
    (|r| > 1 is allowed for an inverted medium).
    """
    om = np.asarray(omega, dtype=float)
    half_k = 0.5 * params.kappa
    a = math.pi * params.alpha_l * w
    r = (half_k + a + 1j * om / params.fsr) / (half_k - a - 1j * om / params.fsr)
    if np.ndim(omega) == 0:
        return complex(r)
    return r


def group_delay(w: float, params: CavityParams) -> float:
    """Group delay of a matched cavity from r_W(w) = r_W(0) + i w T_g.

    T_g = 4 / (kappa * fsr * (1 - W)^2), diverging as the medium approaches
    full inversion.
    """
    if not params.is_matched():
        raise ValueError(
            f"group delay is defined for a matched cavity; mismatch {params.mismatch:+g}"
        )
    if w >= 1.0:
        raise ValueError(f"group delay is singular for W >= 1, got W={w}")
    return 4.0 / (params.kappa * params.fsr * (1.0 - w) ** 2)


@dataclass(frozen=True)
class ResponsePoint:
    """One sample of the spectral response."""

    omega: float
    r: complex

    @classmethod
    def at(cls, omega: float, params: CavityParams) -> "ResponsePoint":
        return cls(omega, reflection(omega, params))
