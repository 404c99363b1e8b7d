"""Coincidence rates: numeric quadrature vs closed form, dip readout."""

import math

import numpy as np
import pytest

from biphoton import (
    CoverageError,
    DelayScan,
    DomainError,
    FrequencyGrid,
    GridError,
    JointSpectralAmplitude,
    NoDipError,
    UnsupportedProfileError,
    auto_grid,
    build_jsa,
    coincidence_rate_gaussian,
    coincidence_rate_numeric,
    coincidence_scan,
    correlation_time_gaussian,
    default_delays,
    extract_dip,
    gaussian_scan,
    intensity_fwhm,
    marginals,
    preset_with_pump,
    transform_limited_duration,
    visibility_coefficient,
)
from biphoton.hom import gaussian_dip_width
from biphoton.spectral import GAUSSIAN_FWHM_FACTOR

from helpers import OMEGA0, make_pm, make_pump, random_source


class TestNumericRate:
    def test_symmetric_state_bunches_perfectly(self):
        state = build_jsa(make_pump(3e12), make_pm(-1.1e-12, 1.1e-12))
        assert coincidence_rate_numeric(state, 0.0) < 1e-12

    def test_distinguishable_limit(self, ppktp):
        state = build_jsa(ppktp.pump, ppktp.pm)
        t_c = correlation_time_gaussian(ppktp.pm)
        assert coincidence_rate_numeric(state, 20 * t_c) == pytest.approx(1.0, abs=1e-3)

    def test_numeric_equals_closed_form(self, rng):
        for _ in range(5):
            pump, pm = random_source(rng)
            state = build_jsa(pump, pm)
            w = gaussian_dip_width(pm)
            delays = np.linspace(-4 * w, 4 * w, 17)
            numeric = coincidence_scan(state, delays).rates
            analytic = coincidence_rate_gaussian(pump, pm, delays)
            assert np.max(np.abs(numeric - analytic)) < 1e-6

    def test_scan_symmetric_for_symmetric_state(self):
        pm = make_pm(-0.9e-12, 0.9e-12)
        state = build_jsa(make_pump(2.5e12), pm)
        scan = coincidence_scan(state, default_delays(pm))
        assert np.max(np.abs(scan.rates - scan.rates[::-1])) < 1e-9

    def test_non_square_grid_rejected(self):
        grid = FrequencyGrid(64, 64, -1e13, 1e13, -0.5e13, 1e13)
        nu_s = np.linspace(-1e13, 1e13, 64)
        nu_i = np.linspace(-0.5e13, 1e13, 64)
        amp = np.exp(-((nu_s[:, None] / 3e12) ** 2) - (nu_i[None, :] / 3e12) ** 2)
        state = JointSpectralAmplitude(grid, amp, {})
        with pytest.raises(GridError):
            coincidence_rate_numeric(state, 0.0)


class TestClosedForm:
    def test_symmetric_visibility_is_one(self):
        pump, pm = make_pump(3e12), make_pm(-1.1e-12, 1.1e-12)
        assert visibility_coefficient(pump, pm) == 1.0
        assert coincidence_rate_gaussian(pump, pm, 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_asymmetric_visibility_below_one(self, rng):
        for _ in range(10):
            pump, pm = random_source(rng)
            h = visibility_coefficient(pump, pm)
            assert 0.0 < h <= 1.0
            if abs(pm.tau_s + pm.tau_i) > 1e-14:
                assert h < 1.0

    def test_h_matches_numeric_overlap(self, rng):
        for _ in range(5):
            pump, pm = random_source(rng)
            state = build_jsa(pump, pm)
            h = visibility_coefficient(pump, pm)
            assert 1.0 - coincidence_rate_numeric(state, 0.0) == pytest.approx(h, abs=1e-9)

    def test_chirp_leaves_scan_unchanged(self):
        pm = make_pm(-1.4e-12, 0.84e-12)
        delays = default_delays(pm)
        plain = coincidence_rate_gaussian(make_pump(3e12, 0.0), pm, delays)
        chirped = coincidence_rate_gaussian(make_pump(3e12, 1e-26), pm, delays)
        np.testing.assert_allclose(plain, chirped, rtol=0, atol=1e-12)

    def test_sinc_profile_rejected(self):
        pm = make_pm(-1.4e-12, 0.84e-12, profile="sinc")
        with pytest.raises(UnsupportedProfileError):
            coincidence_rate_gaussian(make_pump(3e12), pm, 0.0)
        with pytest.raises(UnsupportedProfileError):
            correlation_time_gaussian(pm)
        with pytest.raises(UnsupportedProfileError):
            visibility_coefficient(make_pump(3e12), pm)


class TestCorrelationTime:
    def test_preset_value(self, ppktp):
        assert correlation_time_gaussian(ppktp.pm) == pytest.approx(1.16e-12, rel=1e-12)

    def test_length_doubling(self, ppktp):
        doubled = preset_with_pump(ppktp, length_scale=2.0)
        assert correlation_time_gaussian(doubled.pm) == pytest.approx(
            2 * correlation_time_gaussian(ppktp.pm), rel=1e-12
        )

    def test_gamma_scaling(self):
        base = make_pm(-1.4e-12, 0.84e-12, gamma=0.2)
        quad = make_pm(-1.4e-12, 0.84e-12, gamma=0.8)
        assert correlation_time_gaussian(quad) == pytest.approx(
            2 * correlation_time_gaussian(base), rel=1e-12
        )

    def test_equal_walkoffs_rejected_at_construction(self):
        with pytest.raises(DomainError):
            make_pm(1e-12, 1e-12)


class TestExtractDip:
    def test_known_width_readout(self):
        pump, pm = make_pump(3e12), make_pm(-1.4e-12, 0.84e-12)
        scan = gaussian_scan(pump, pm, default_delays(pm))
        result = extract_dip(scan, model="gaussian-analytic")
        expected = GAUSSIAN_FWHM_FACTOR * gaussian_dip_width(pm)
        assert result.t_c == pytest.approx(expected, rel=2e-3)
        assert result.visibility == pytest.approx(visibility_coefficient(pump, pm), abs=1e-9)

    def test_flat_scan(self):
        delays = np.linspace(-1e-12, 1e-12, 51)
        with pytest.raises(NoDipError):
            extract_dip(DelayScan(delays=delays, rates=np.ones(51)))

    def test_truncated_scan(self):
        pump, pm = make_pump(3e12), make_pm(-1.4e-12, 0.84e-12)
        w = gaussian_dip_width(pm)
        delays = np.linspace(-0.5 * w, 0.5 * w, 31)
        scan = gaussian_scan(pump, pm, delays)
        with pytest.raises(CoverageError):
            extract_dip(scan)

    def test_sinc_refinement(self, ppktp_sinc):
        src = preset_with_pump(ppktp_sinc, pump_fwhm_nm=2.0, profile="sinc")
        delays = default_delays(src.pm, n=401)
        coarse = build_jsa(src.pump, src.pm, auto_grid(src.pump, src.pm, n=512))
        fine = build_jsa(src.pump, src.pm, auto_grid(src.pump, src.pm, n=2048))
        t_coarse = extract_dip(coincidence_scan(coarse, delays)).t_c
        t_fine = extract_dip(coincidence_scan(fine, delays)).t_c
        assert t_coarse == pytest.approx(t_fine, rel=0.01)

    def test_delay_scan_validation(self):
        with pytest.raises(DomainError):
            DelayScan(delays=np.array([0.0, -1e-13, 1e-13]), rates=np.ones(3))
        with pytest.raises(DomainError):
            DelayScan(delays=np.linspace(-1, 1, 11), rates=np.full(11, 1.2))


class TestPumpIndependence:
    def test_dip_width_invariant_under_pump(self, ppktp):
        widths_nm = np.geomspace(0.45, 4.5, 5)
        betas = [0.0, 1e-26, -1e-26]
        values = []
        for width in widths_nm:
            for beta in betas:
                src = preset_with_pump(ppktp, pump_fwhm_nm=float(width), beta=beta)
                scan = gaussian_scan(src.pump, src.pm, default_delays(src.pm))
                values.append(extract_dip(scan, model="gaussian-analytic").t_c)
        values = np.asarray(values)
        assert (values.max() - values.min()) / values.min() < 1e-3


class TestTableOne:
    def test_sinc_decorrelated_dip(self, ppktp_sinc):
        src = preset_with_pump(ppktp_sinc, pump_fwhm_nm=2.0, profile="sinc")
        state = build_jsa(src.pump, src.pm)
        result = extract_dip(coincidence_scan(state, default_delays(src.pm)))
        assert result.t_c == pytest.approx(1.16e-12, rel=0.05)

    def test_sinc_ordering_across_pump_widths(self, ppktp_sinc):
        expected = {0.7: 1.10e-12, 2.0: 1.16e-12, 4.5: 1.21e-12}
        measured = []
        for width, reference in expected.items():
            src = preset_with_pump(ppktp_sinc, pump_fwhm_nm=width, profile="sinc")
            state = build_jsa(src.pump, src.pm)
            t_c = extract_dip(coincidence_scan(state, default_delays(src.pm))).t_c
            assert t_c == pytest.approx(reference, rel=0.10)
            measured.append(t_c)
        assert measured[0] < measured[1] < measured[2]


class TestConvolutionRule:
    def test_decorrelated_state_matches_marginal_convolution(self):
        # at the zero-cross-coefficient point the dip width equals the
        # quadrature sum of the marginal transform-limited durations
        sigma, gamma, tau_s = 3e12, 0.193, -1.2e-12
        tau_i = -4.0 / (gamma * sigma**2 * tau_s)
        pump, pm = make_pump(sigma), make_pm(tau_s, tau_i, gamma)
        state = build_jsa(pump, pm)
        t_c = extract_dip(coincidence_scan(state, default_delays(pm))).t_c

        lam = 2 * math.pi * 299792458.0 / OMEGA0
        signal, idler = marginals(state)
        conv = math.hypot(
            transform_limited_duration(
                lam, _omega_to_lambda(lam, intensity_fwhm(state.grid.nu_s, signal))
            ),
            transform_limited_duration(
                lam, _omega_to_lambda(lam, intensity_fwhm(state.grid.nu_i, idler))
            ),
        )
        assert abs(t_c - conv) / conv < 0.10

    def test_correlated_state_departs_from_convolution(self, ppktp):
        src = preset_with_pump(ppktp, pump_fwhm_nm=4.5)
        state = build_jsa(src.pump, src.pm)
        t_c = extract_dip(coincidence_scan(state, default_delays(src.pm))).t_c
        lam = 2 * math.pi * 299792458.0 / OMEGA0
        signal, idler = marginals(state)
        conv = math.hypot(
            transform_limited_duration(
                lam, _omega_to_lambda(lam, intensity_fwhm(state.grid.nu_s, signal))
            ),
            transform_limited_duration(
                lam, _omega_to_lambda(lam, intensity_fwhm(state.grid.nu_i, idler))
            ),
        )
        assert abs(t_c - conv) / conv > 0.10


def _omega_to_lambda(center_wavelength, fwhm_omega):
    return fwhm_omega * center_wavelength**2 / (2 * math.pi * 299792458.0)
