"""Analytic input/output relations for pulse areas in the ring cavity.

The intracavity area Theta obeys the transcendental relation

    (kappa/2) Theta + pi alpha_l sin(Theta) = sqrt(kappa) Theta_in

and the outgoing area is Theta_out = sqrt(kappa) Theta - Theta_in.  For
alpha_l <= kappa/2pi the left-hand side is monotone and the root unique;
an over-matched cavity folds the curve, and the physical solution is the
branch continuously connected to Theta = 0 as Theta_in grows from zero.
The solver is plain bisection: the derivative of the left-hand side
vanishes at odd multiples of pi under matching, which stalls Newton steps
but leaves bisection untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CavityParams

#: Beyond this, 2*pi*alpha_l/kappa counts as over-matched (folded curve).
_MONOTONE_TOL = 1e-12


@dataclass(frozen=True)
class AreaSolution:
    """One point of the area relation; branch counts fold crossings (0 = main)."""

    theta_in: float
    theta_cav: float
    theta_out: float
    branch: int
    residual: float


def _lhs(theta: float, params: CavityParams) -> float:
    return 0.5 * params.kappa * theta + math.pi * params.alpha_l * math.sin(theta)


def _bisect(target: float, lo: float, hi: float, params: CavityParams) -> float:
    """Root of _lhs(theta) = target on a bracket where _lhs is non-decreasing."""
    flo = _lhs(lo, params) - target
    fhi = _lhs(hi, params) - target
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo > 0.0 or fhi < 0.0:
        raise RuntimeError(
            f"bracket [{lo:g}, {hi:g}] does not enclose the root (f: {flo:g}, {fhi:g})"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _lhs(mid, params) - target <= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def intracavity_area(theta_in: float, params: CavityParams) -> AreaSolution:
    """Solve the area relation for a non-negative incoming area.

    Matched/under-matched cavities have a unique root.  Over-matched ones
    are handled by continuation from Theta = 0: whenever the target climbs
    past a fold of the curve, the solution jumps to the next rising branch
    and the branch index is incremented (folds are never crossed silently).
    """
    if theta_in < 0.0:
        raise ValueError(f"theta_in must be non-negative, got {theta_in}")
    sqk = math.sqrt(params.kappa)
    target = sqk * theta_in
    m = 2.0 * math.pi * params.alpha_l / params.kappa
    if m <= 1.0 + _MONOTONE_TOL:
        # monotone: root below (target + pi*alpha_l + kappa/2) / (kappa/2)
        hi = (target + math.pi * params.alpha_l) / (0.5 * params.kappa) + 1.0
        theta = _bisect(target, 0.0, hi, params)
        branch = 0
    else:
        # rising branches live on [2*pi*j - t_star, 2*pi*j + t_star]
        t_star = math.acos(-params.kappa / (2.0 * math.pi * params.alpha_l))
        branch = 0
        while _lhs(2.0 * math.pi * branch + t_star, params) < target:
            branch += 1
        lo = 2.0 * math.pi * branch - t_star if branch > 0 else 0.0
        hi = 2.0 * math.pi * branch + t_star
        theta = _bisect(target, lo, hi, params)
    residual = _lhs(theta, params) - target
    theta_out = sqk * theta - theta_in
    return AreaSolution(theta_in, theta, theta_out, branch, residual)


def area_curve(theta_in_max: float, n_points: int, params: CavityParams) -> list[AreaSolution]:
    """Sampled area relation over [0, theta_in_max] for a non-folded cavity."""
    if 2.0 * math.pi * params.alpha_l / params.kappa > 1.0 + _MONOTONE_TOL:
        raise ValueError(
            "area_curve requires a matched or under-matched cavity "
            f"(alpha_l <= kappa/2pi); got mismatch {params.mismatch:+g}"
        )
    if n_points < 2:
        raise ValueError("need at least two points")
    return [intracavity_area(t, params) for t in np.linspace(0.0, theta_in_max, n_points)]


def all_roots(theta_in: float, params: CavityParams, theta_max: float | None = None) -> list[float]:
    """Every solution of the area relation in [0, theta_max].

    Exposes the fold-skipped roots of an over-matched cavity; the
    continuation policy of intracavity_area never selects these.
    """
    if theta_in < 0.0:
        raise ValueError(f"theta_in must be non-negative, got {theta_in}")
    sqk = math.sqrt(params.kappa)
    target = sqk * theta_in
    if theta_max is None:
        theta_max = (target + math.pi * params.alpha_l) / (0.5 * params.kappa) + 1.0
    m = 2.0 * math.pi * params.alpha_l / params.kappa
    edges = [0.0]
    if m > 1.0 + _MONOTONE_TOL:
        t_star = math.acos(-1.0 / m)
        j = 0
        while True:
            for x in (2.0 * math.pi * j + t_star, 2.0 * math.pi * (j + 1) - t_star):
                if x >= theta_max:
                    break
                if x > 0.0:
                    edges.append(x)
            else:
                j += 1
                continue
            break
    edges.append(theta_max)
    roots = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        flo = _lhs(lo, params) - target
        fhi = _lhs(hi, params) - target
        if flo == 0.0:
            roots.append(lo)
            continue
        if flo * fhi > 0.0:
            continue
        # each segment is monotone; orient the bracket for the bisector
        if flo < 0.0:
            r = _bisect(target, lo, hi, params)
        else:
            r = _bisect_decreasing(target, lo, hi, params)
        roots.append(r)
    if roots and math.isclose(roots[-1], theta_max, rel_tol=0, abs_tol=1e-12):
        roots.pop()
    # dedupe roots landing on shared segment edges
    out: list[float] = []
    for r in roots:
        if not out or abs(r - out[-1]) > 1e-9:
            out.append(r)
    return out


def _bisect_decreasing(target: float, lo: float, hi: float, params: CavityParams) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _lhs(mid, params) - target >= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)
