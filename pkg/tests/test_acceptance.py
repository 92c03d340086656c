"""Full-scale acceptance runs at the package defaults.

One test per criterion, each printing a PASS/FAIL line (run pytest -s to
see them).  Shared fixtures carry the expensive simulations: the complete
drive-area sweep, the critical-area and double-critical runs, the weak
drives, and a wide-span weak probe for the transfer-function check.
"""

import math

import numpy as np
import pytest

from ringbloch import (
    DetuningGrid,
    area_sweep,
    cavity_linewidth,
    diagnose,
    group_delay,
    intracavity_area,
    measured_transfer,
    reflection,
    reflection_generalized,
    simulate,
    xcorr_delay,
)
from ringbloch.scenarios import build_config, critical_area, default_params

PARAMS = default_params()
CRIT = critical_area(PARAMS)
SQK = math.sqrt(PARAMS.kappa)


def _report(num, label, ok, detail):
    print(f"ACCEPTANCE {num} {'PASS' if ok else 'FAIL'} - {label}: {detail}")
    assert ok, f"criterion {num} ({label}): {detail}"


@pytest.fixture(scope="session")
def sweep():
    areas = np.linspace(0.0, 2.0 * CRIT, 20)
    points = area_sweep(areas, build_config(area_scaled=1.0), threads=2)
    return areas, points


@pytest.fixture(scope="session")
def critical_run():
    cfg = build_config(area_scaled=1.0)
    rec = simulate(cfg)
    return cfg, rec, diagnose(rec, cfg.params, cfg.grid)


@pytest.fixture(scope="session")
def sit_runs():
    out = {}
    for dt in (2e-9, 1e-9):
        cfg = build_config(area_scaled=2.0, dt=dt)
        rec = simulate(cfg)
        out[dt] = (cfg, rec, diagnose(rec, cfg.params, cfg.grid))
    return out


@pytest.fixture(scope="session")
def weak_run():
    cfg = build_config(area_scaled=0.04)
    rec = simulate(cfg)
    return cfg, rec, diagnose(rec, cfg.params, cfg.grid)


@pytest.fixture(scope="session")
def probe_run():
    # The continuum reflection formula holds only when the detuning span
    # dwarfs 2*alpha_l*fsr = 1.2e7 rad/s (a finite flat profile adds
    # anomalous dispersion ~2*alpha_l/span to the 1/fsr cavity slope).
    # Span 1.8e9 keeps that bias at 0.67%, inside the 1% budget; a short
    # 0.5 us probe keeps the run affordable at the dt the span demands.
    sigma = 0.5e-6
    grid = DetuningGrid(n=4801, spacing=7.5e5)
    dt = 0.05 / grid.half_span
    cfg = build_config(area_scaled=0.01, grid=grid, sigma=sigma, center=3.5e-6,
                       window=(0.0, 8e-6), dt=dt)
    return sigma, cfg, simulate(cfg)


def test_criterion_1_area_relation_anchors():
    half = intracavity_area(0.5 * SQK * math.pi, PARAMS)
    full = intracavity_area(SQK * math.pi, PARAMS)
    # the relation is cubically flat at pi, so target rounding (~1e-18)
    # moves the root by up to ~1e-4 rad there; 2*pi is a regular point
    ok = (
        abs(half.theta_cav - math.pi) <= 1e-4
        and abs(half.theta_out - 0.5 * SQK * math.pi) <= 1e-4
        and abs(full.theta_cav - 2.0 * math.pi) <= 1e-9
        and abs(full.theta_out - SQK * math.pi) <= 1e-9
        and abs(half.residual) <= 1e-12
        and abs(full.residual) <= 1e-12
    )
    _report(1, "area-relation anchors", ok,
            f"theta(pi-drive)={half.theta_cav:.9f}, theta(2pi-drive)={full.theta_cav:.9f}, "
            f"residuals {abs(half.residual):.1e}/{abs(full.residual):.1e} (limit 1e-12)")


def test_criterion_2_sweep_matches_analytic_curve(sweep):
    _, points = sweep
    worst = max(p.curve_deviation for p in points)
    _report(2, "20-point sweep vs analytic areas", worst <= 1e-2,
            f"max |sim - analytic| = {worst:.2e} rad (limit 1e-02)")


def test_criterion_3_critical_width_blowup(sweep, critical_run):
    areas, points = sweep
    _, _, diag = critical_run
    elong = np.array([p.elongation if not math.isnan(p.elongation) else -math.inf
                      for p in points])
    peak_area = areas[int(elong.argmax())]
    ok = diag.elongation > 10.0 and abs(peak_area - CRIT) <= 0.1 * CRIT
    _report(3, "width blow-up at the critical area", ok,
            f"elongation(critical) = {diag.elongation:.1f} (limit >10), "
            f"sweep argmax at {peak_area / CRIT:.3f}x critical (limit 1.0 +- 0.1)")


def test_criterion_4_shape_preserving_delay(sit_runs):
    _, rec, diag = sit_runs[2e-9]
    peak, delay = xcorr_delay(rec.omega_out, rec.omega_in)
    ok = peak >= 0.98 and 1e-6 <= delay <= 5e-6 and diag.elongation <= 1.3
    _report(4, "delayed replica at twice the critical area", ok,
            f"xcorr peak = {peak:.4f} (limit >= 0.98), delay = {delay * 1e6:.2f} us "
            f"(limit 1..5 us), elongation = {diag.elongation:.3f} (limit <= 1.3)")


def test_criterion_5_weak_drive_absorption(weak_run):
    _, _, diag = weak_run
    ratio = diag.u_out / diag.u_in
    _report(5, "weak-drive absorption", ratio <= 0.01,
            f"u_out/u_in = {ratio:.2e} (limit 1e-02)")


def test_criterion_6_quanta_balance(sweep, critical_run, sit_runs, weak_run):
    _, points = sweep
    residuals = [abs(p.quanta_residual) for p in points if not math.isnan(p.quanta_residual)]
    residuals.append(abs(critical_run[2].quanta_residual))
    residuals.append(abs(sit_runs[2e-9][2].quanta_residual))
    residuals.append(abs(weak_run[2].quanta_residual))
    worst = max(residuals)
    _report(6, "quanta balance on every run", worst <= 1e-4,
            f"max |residual|/u_in = {worst:.2e} (limit 1e-04)")


def test_criterion_7_integrator_quality(critical_run, sit_runs):
    _, rec_c, _ = critical_run
    _, rec_s, diag = sit_runs[2e-9]
    _, _, diag_half = sit_runs[1e-9]
    norm_worst = max(rec_c.max_norm_error, rec_s.max_norm_error)
    changes = [
        abs(diag.theta_out - diag_half.theta_out) / abs(diag_half.theta_out),
        abs(diag.sigma_out - diag_half.sigma_out) / abs(diag_half.sigma_out),
        abs(diag.u_out - diag_half.u_out) / abs(diag_half.u_out),
    ]
    ok = norm_worst <= 1e-8 and max(changes) <= 1e-4
    _report(7, "Bloch norm and step-halving", ok,
            f"max norm error = {norm_worst:.1e} (limit 1e-08); halving changes "
            f"theta_out/sigma_out/u_out by {changes[0]:.1e}/{changes[1]:.1e}/{changes[2]:.1e} "
            f"(limit 1e-04)")


def test_criterion_8_spectral_response_anchors():
    from test_linear_response import dip_fwhm_by_bisection

    lw = cavity_linewidth(PARAMS)
    fwhm = dip_fwhm_by_bisection(PARAMS, 4 * lw)
    r0 = abs(reflection(0.0, PARAMS))
    rw_ok = all(
        abs(reflection_generalized(0.0, w, PARAMS) - (1 + w) / (1 - w)) <= 1e-12
        for w in (-1.0, 0.0, 0.5)
    )
    kd = PARAMS.kappa * PARAMS.fsr
    fd_ok = True
    for w in (-1.0, -0.5, 0.0, 0.5):
        d = 1e-4 * kd * (1.0 - w)
        fd = (reflection_generalized(d, w, PARAMS)
              - reflection_generalized(-d, w, PARAMS)) / (2.0 * d)
        fd_ok &= abs(group_delay(w, PARAMS) - fd.imag) <= 1e-6 * abs(fd.imag)
    ratio = group_delay(0.0, PARAMS) / group_delay(-1.0, PARAMS)
    ok = (
        r0 <= 1e-12
        and abs(fwhm - lw) <= 1e-9 * lw
        and abs(lw - 2 * math.pi * 12e6) <= 1e-12 * lw
        and rw_ok
        and fd_ok
        and abs(ratio - 4.0) <= 1e-12
    )
    _report(8, "spectral response anchors", ok,
            f"|r(0)| = {r0:.1e}, dip FWHM = {fwhm:.6e} vs 2*kappa*fsr = {lw:.6e} "
            f"(= 2pi x 12 MHz), T_g(0)/T_g(-1) = {ratio!r}")


def test_criterion_9_weak_probe_transfer(probe_run):
    sigma, cfg, rec = probe_run
    om, h = measured_transfer(rec)
    band = om <= 2.0 / sigma
    r = reflection(om[band], cfg.params)
    err = float(np.abs(h[band] - r).max())
    scale = float(np.abs(r).max())
    _report(9, "weak-probe transfer equivalence", err <= 0.01 * scale,
            f"max |H - r| = {err:.2e} = {err / scale:.2%} of band max |r| (limit 1%)")
