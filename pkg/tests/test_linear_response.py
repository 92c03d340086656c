import math

import numpy as np
import pytest

from ringbloch import (
    CavityParams,
    ResponsePoint,
    cavity_linewidth,
    group_delay,
    reflection,
    reflection_generalized,
)


@pytest.fixture(scope="module")
def matched_params():
    return CavityParams(kappa=2 * math.pi / 500, fsr=3e9, alpha_l=1 / 500)


def dip_fwhm_by_bisection(params, omega_max):
    """Independent half-maximum locator for the reflection dip 1 - |r|^2."""

    def dip(w):
        return 1.0 - abs(reflection(w, params)) ** 2

    half = 0.5 * dip(0.0)
    ws = np.linspace(0.0, omega_max, 2001)
    vals = 1.0 - np.abs(reflection(ws, params)) ** 2
    idx = np.nonzero(vals < half)[0]
    idx = idx[idx > 0][0]
    lo, hi = ws[idx - 1], ws[idx]
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if dip(mid) >= half:
            lo = mid
        else:
            hi = mid
    return lo + hi  # symmetric dip: FWHM = 2 * positive crossing


class TestReflection:
    def test_matched_zero_on_resonance(self, matched_params):
        assert abs(reflection(0.0, matched_params)) <= 1e-12

    def test_lossless_cavity_reflects_fully(self):
        p = CavityParams(kappa=0.1, fsr=3e9, alpha_l=0.0)
        assert reflection(0.0, p) == pytest.approx(1.0, abs=1e-15)

    def test_matched_lorentzian_dip(self, matched_params):
        kd = matched_params.kappa * matched_params.fsr
        for om in (1e5, 1e6, 1e7, 5e7):
            expected = om**2 / (kd**2 + om**2)
            assert abs(reflection(om, matched_params)) ** 2 == pytest.approx(expected, rel=1e-12)

    def test_dip_fwhm_is_cavity_linewidth(self, matched_params):
        fwhm = dip_fwhm_by_bisection(matched_params, 4 * cavity_linewidth(matched_params))
        assert fwhm == pytest.approx(cavity_linewidth(matched_params), rel=1e-9)

    def test_array_input(self, matched_params):
        om = np.array([0.0, 1e6, -1e6])
        r = reflection(om, matched_params)
        assert r.shape == (3,)
        assert r[2] == np.conj(r[1])  # real-coefficient response

    def test_response_point(self, matched_params):
        pt = ResponsePoint.at(1e6, matched_params)
        assert pt.r == reflection(1e6, matched_params)


class TestReflectionGeneralized:
    def test_reduces_to_ground_state_reflection(self, matched_params):
        om = np.linspace(-5e7, 5e7, 101)
        np.testing.assert_allclose(
            reflection_generalized(om, -1.0, matched_params),
            reflection(om, matched_params),
            rtol=0.0, atol=1e-15,
        )

    def test_matched_dc_value(self, matched_params):
        for w in (-1.0, -0.5, 0.0, 0.5, 0.9):
            expected = (1 + w) / (1 - w)
            assert reflection_generalized(0.0, w, matched_params) == pytest.approx(
                expected, rel=1e-12, abs=1e-12
            )

    def test_inverted_medium_has_gain(self, matched_params):
        assert reflection_generalized(0.0, 0.9, matched_params).real == pytest.approx(19.0, rel=1e-12)

    def test_passivity_for_uninverted_medium(self, matched_params):
        om = np.linspace(-3e8, 3e8, 401)
        for w in (-1.0, -0.7, -0.2, 0.0):
            assert np.all(np.abs(reflection_generalized(om, w, matched_params)) <= 1.0 + 1e-12)
        assert abs(reflection_generalized(0.0, 0.3, matched_params)) > 1.0


class TestGroupDelay:
    def test_finite_difference_oracle(self, matched_params):
        kd = matched_params.kappa * matched_params.fsr
        for w in (-1.0, -0.5, 0.0, 0.5):
            d = 1e-4 * kd * (1.0 - w)
            fd = (reflection_generalized(d, w, matched_params)
                  - reflection_generalized(-d, w, matched_params)) / (2.0 * d)
            tg_fd = fd.imag
            assert abs(fd.real) <= 1e-8 * abs(tg_fd)
            assert group_delay(w, matched_params) == pytest.approx(tg_fd, rel=1e-6)

    def test_ratio_ground_to_transparent(self, matched_params):
        ratio = group_delay(0.0, matched_params) / group_delay(-1.0, matched_params)
        assert ratio == pytest.approx(4.0, rel=1e-12)

    def test_divergence_towards_inversion(self, matched_params):
        # T_g * (1-W)^2 is constant, so T_g diverges as (1-W)^(-2)
        vals = [group_delay(1.0 - eps, matched_params) * eps**2 for eps in (1e-2, 1e-3, 1e-4)]
        assert vals[0] == pytest.approx(vals[1], rel=1e-12)
        assert vals[1] == pytest.approx(vals[2], rel=1e-12)

    def test_rejects_full_inversion(self, matched_params):
        with pytest.raises(ValueError, match="singular"):
            group_delay(1.0, matched_params)

    def test_rejects_unmatched_cavity(self):
        p = CavityParams(kappa=0.1, fsr=3e9, alpha_l=0.0)
        with pytest.raises(ValueError, match="matched"):
            group_delay(-1.0, p)
