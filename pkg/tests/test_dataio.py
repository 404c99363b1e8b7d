"""CSV formats, dip fits, and the summary table."""

import math

import numpy as np
import pytest

from biphoton import (
    C_M_PER_S,
    DomainError,
    FitError,
    MeasuredScan,
    ParseError,
    build_jsa,
    coincidence_scan,
    convolved_duration,
    default_delays,
    export_jsi_csv,
    export_scan,
    extract_dip,
    fit_dip,
    gaussian_scan,
    load_jsi,
    load_scan,
    preset_with_pump,
    render_table,
    sinc_dip_kernel,
    table_report,
)
from biphoton.hom import gaussian_dip_width
from biphoton.spectral import GAUSSIAN_FWHM_FACTOR


def write_scan_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def synthetic_counts(ppktp, pump_fwhm_nm=2.0, baseline=1e4, n=201):
    src = preset_with_pump(ppktp, pump_fwhm_nm=pump_fwhm_nm)
    delays = default_delays(src.pm, n=n)
    rates = gaussian_scan(src.pump, src.pm, delays).rates
    return src, delays, baseline * rates


class TestLoadScan:
    def test_well_formed_with_sigma(self, tmp_path):
        path = tmp_path / "scan.csv"
        rows = [f"{t},{100 + t},{10}" for t in range(-6, 6)]
        write_scan_lines(path, ["# a comment", "delay_ps,coincidences,sigma"] + rows)
        scan = load_scan(path)
        assert scan.delays[0] == pytest.approx(-6e-12)
        assert scan.sigma is not None and scan.sigma[0] == 10
        assert scan.comments == ("# a comment",)

    def test_stage_travel_unit(self, tmp_path):
        # 0.15 mm of double-pass travel is 2*0.15e-3/c seconds of delay
        path = tmp_path / "scan.csv"
        rows = [f"{0.15 * k},{50}" for k in range(12)]
        write_scan_lines(path, ["delay_mm,coincidences"] + rows)
        scan = load_scan(path)
        assert scan.delays[1] == pytest.approx(2 * 0.15e-3 / C_M_PER_S, rel=1e-12)

    def test_shuffled_delays(self, tmp_path):
        path = tmp_path / "scan.csv"
        rows = [f"{t},{100}" for t in (0, 2, 1, 3, 4, 5, 6, 7, 8, 9)]
        write_scan_lines(path, ["delay_ps,coincidences"] + rows)
        with pytest.raises((ParseError, DomainError), match="increasing"):
            load_scan(path)

    def test_negative_counts(self, tmp_path):
        path = tmp_path / "scan.csv"
        rows = [f"{t},{100 if t != 4 else -3}" for t in range(12)]
        write_scan_lines(path, ["delay_ps,coincidences"] + rows)
        with pytest.raises((ParseError, DomainError), match="negative|non-negative"):
            load_scan(path)

    def test_malformed_cell_reports_line(self, tmp_path):
        path = tmp_path / "scan.csv"
        rows = [f"{t},100" for t in range(12)]
        rows[5] = "5,not-a-number"
        write_scan_lines(path, ["delay_ps,coincidences"] + rows)
        with pytest.raises(ParseError, match=":7:"):
            load_scan(path)

    def test_unknown_unit_rejected(self, tmp_path):
        path = tmp_path / "scan.csv"
        write_scan_lines(path, ["delay_fs,coincidences"] + [f"{t},1" for t in range(12)])
        with pytest.raises(ParseError, match="delay_ps or delay_mm"):
            load_scan(path)

    def test_too_few_points(self, tmp_path):
        path = tmp_path / "scan.csv"
        write_scan_lines(path, ["delay_ps,coincidences"] + [f"{t},1" for t in range(5)])
        with pytest.raises(DomainError, match="at least 10"):
            load_scan(path)

    def test_round_trip_bit_identical(self, tmp_path, ppktp):
        _, delays, counts = synthetic_counts(ppktp)
        scan = MeasuredScan(delays=delays, counts=np.round(counts), sigma=np.sqrt(counts))
        first = tmp_path / "a.csv"
        export_scan(scan, first)
        second = tmp_path / "b.csv"
        export_scan(load_scan(first), second)
        assert first.read_bytes() == second.read_bytes()


class TestLoadJsi:
    def test_nm_grid_conversion(self, tmp_path):
        # 11x11 grid at 1.8 nm pitch around 1535 nm
        lams = 1535.0 + 1.8 * (np.arange(11) - 5)
        lines = ["lambda_s_nm,lambda_i_nm,intensity"]
        for ls in lams:
            for li in lams:
                value = math.exp(-(((ls - 1535) ** 2 + (li - 1535) ** 2) / 8.0))
                lines.append(f"{ls},{li},{value}")
        path = tmp_path / "jsi.csv"
        write_scan_lines(path, lines)
        state = load_jsi(path)
        # endpoints of the converted axis match the exact unit conversion
        omega = 2 * math.pi * C_M_PER_S / (lams * 1e-9)
        omega0 = 0.5 * (omega.min() + omega.max())
        assert state.grid.nu_s_min == pytest.approx(omega.min() - omega0, rel=1e-12)
        assert state.grid.nu_s_max == pytest.approx(omega.max() - omega0, rel=1e-12)
        assert state.provenance["phase_assumed_zero"] is True
        assert state.provenance["kind"] == "measured"
        # amplitude is sqrt(intensity): peak 1 at the center
        assert np.abs(state.amplitude).max() == pytest.approx(1.0, rel=1e-9)

    def test_incomplete_grid(self, tmp_path):
        lines = ["lambda_s_nm,lambda_i_nm,intensity", "1533,1533,1", "1535,1533,1", "1533,1535,1"]
        path = tmp_path / "jsi.csv"
        write_scan_lines(path, lines)
        with pytest.raises(ParseError, match="full"):
            load_jsi(path)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "jsi.csv"
        write_scan_lines(path, ["wavelength,other,z", "1,1,1"])
        with pytest.raises(ParseError, match="header"):
            load_jsi(path)

    def test_negative_intensity(self, tmp_path):
        lines = ["lambda_s_nm,lambda_i_nm,intensity", "1533,1533,1", "1533,1535,-1",
                 "1535,1533,1", "1535,1535,1"]
        path = tmp_path / "jsi.csv"
        write_scan_lines(path, lines)
        with pytest.raises(ParseError, match="negative"):
            load_jsi(path)

    def test_hom_prediction_from_measured_jsi(self, tmp_path, ppktp):
        # export a model JSI, re-import it as a "measurement" (zero phase)
        # and run the interference prediction on it; the approximate-phase
        # flag travels in the provenance
        state = build_jsa(ppktp.pump, ppktp.pm)
        path = tmp_path / "jsi.csv"
        export_jsi_csv(state, path)
        measured = load_jsi(path)
        assert measured.provenance["phase_assumed_zero"] is True
        scan = coincidence_scan(measured, default_delays(ppktp.pm))
        t_c = extract_dip(scan).t_c
        # the unchirped gaussian state has no phase, so the zero-phase
        # reconstruction reproduces its dip
        assert t_c == pytest.approx(1.16e-12, rel=0.02)

    def test_jta_export(self, tmp_path, ppktp):
        from biphoton import export_jta_csv, jta_from_jsa

        state = build_jsa(ppktp.pump, ppktp.pm, grid=None)
        jta = jta_from_jsa(state, oversample=1)
        path = tmp_path / "jta.csv"
        export_jta_csv(jta, path)
        lines = path.read_text().splitlines()
        assert lines[1] == "t_s_ps,t_i_ps,re,im"
        assert len(lines) == 2 + jta.times.size**2

    def test_export_import_cycle(self, tmp_path, ppktp):
        state = build_jsa(ppktp.pump, ppktp.pm)
        path = tmp_path / "jsi.csv"
        export_jsi_csv(state, path)
        loaded = load_jsi(path)
        assert loaded.grid.n_s == state.grid.n_s
        # detuning axes agree after the nm round trip (small-bandwidth regime)
        assert loaded.grid.nu_s_max == pytest.approx(state.grid.nu_s_max, rel=1e-4)
        np.testing.assert_allclose(
            np.abs(loaded.amplitude) ** 2,
            np.abs(state.amplitude) ** 2,
            atol=1e-7,
        )


class TestFitDip:
    def test_noiseless_recovery(self, ppktp):
        src, delays, counts = synthetic_counts(ppktp)
        scan = MeasuredScan(delays=delays, counts=counts)
        report = fit_dip(scan, model="gaussian-dip")
        truth = GAUSSIAN_FWHM_FACTOR * gaussian_dip_width(src.pm)
        assert report.t_c == pytest.approx(truth, rel=1e-3)
        assert report.visibility == pytest.approx(0.9733, abs=1e-4)
        assert report.residual_rms < 1e-6 * counts.max()

    def test_poisson_recovery_within_three_sigma(self, ppktp, rng):
        src, delays, counts = synthetic_counts(ppktp)
        noisy = rng.poisson(counts).astype(float)
        scan = MeasuredScan(delays=delays, counts=noisy)
        report = fit_dip(scan, model="gaussian-dip")
        truth = GAUSSIAN_FWHM_FACTOR * gaussian_dip_width(src.pm)
        assert abs(report.t_c - truth) < 3 * report.t_c_sigma
        assert report.t_c_sigma > 0

    def test_sinc_kernel_self_consistency(self, ppktp):
        src = preset_with_pump(ppktp, pump_fwhm_nm=2.0, profile="sinc")
        state = build_jsa(src.pump, src.pm)
        delays = default_delays(src.pm)
        scan_sim = coincidence_scan(state, delays)
        t_ref = extract_dip(scan_sim).t_c
        counts = 1e4 * scan_sim.rates
        kernel = sinc_dip_kernel(ppktp, 2.0)
        report = fit_dip(
            MeasuredScan(delays=delays, counts=counts), model="sinc-kernel-dip", kernel=kernel
        )
        assert report.t_c == pytest.approx(t_ref, rel=5e-3)

    def test_kernel_required(self, ppktp):
        _, delays, counts = synthetic_counts(ppktp)
        scan = MeasuredScan(delays=delays, counts=counts)
        with pytest.raises(DomainError, match="kernel"):
            fit_dip(scan, model="sinc-kernel-dip")

    def test_unknown_model(self, ppktp):
        _, delays, counts = synthetic_counts(ppktp)
        with pytest.raises(DomainError, match="unknown dip model"):
            fit_dip(MeasuredScan(delays=delays, counts=counts), model="lorentzian")

    def test_unconstrained_fit_raises(self):
        delays = np.linspace(-1e-12, 1e-12, 12)
        counts = np.zeros(12)
        with pytest.raises((FitError, DomainError)):
            fit_dip(MeasuredScan(delays=delays, counts=counts))


class TestDurations:
    def test_convolved_duration_examples(self):
        assert round(convolved_duration(1535e-9, 5.84e-9, 10.14e-9) * 1e12, 2) == 0.68
        assert round(convolved_duration(1535e-9, 4.3e-9, 5.46e-9) * 1e12, 2) == 1.02
        assert round(convolved_duration(1535e-9, 3.06e-9, 3.12e-9) * 1e12, 2) == 1.58

    def test_symmetric_toy(self):
        # equal arms add in quadrature: sqrt(2) times one arm
        one = convolved_duration(1535e-9, 4e-9, 4e-9)
        single = convolved_duration(1535e-9, 4e-9, 4e-9) / math.sqrt(2)
        assert one == pytest.approx(math.sqrt(2) * single, rel=1e-12)


class TestTableReport:
    def test_three_row_report(self, ppktp):
        rows = table_report(ppktp, [0.7, 2.0, 4.5], profile="sinc")
        labels = [r.label for r in rows]
        assert labels == ["anticorrelated", "decorrelated", "correlated"]
        t_cs = [r.t_c_sim for r in rows]
        assert t_cs[0] < t_cs[1] < t_cs[2]
        decorr = rows[1]
        assert decorr.t_c_sim == pytest.approx(1.16e-12, rel=0.05)
        assert decorr.duration_pump == pytest.approx(0.43e-12, abs=0.005e-12)
        # convolution column follows from the simulated marginals
        expected_conv = convolved_duration(
            1535e-9, decorr.marginal_s_nm * 1e-9, decorr.marginal_i_nm * 1e-9
        )
        assert decorr.duration_conv == pytest.approx(expected_conv, rel=1e-12)

    def test_measured_column(self, ppktp, rng):
        src, delays, counts = synthetic_counts(ppktp)
        noisy = rng.poisson(counts).astype(float)
        scan = MeasuredScan(delays=delays, counts=noisy)
        rows = table_report(ppktp, [2.0], measurements={2.0: scan}, profile="sinc")
        assert rows[0].t_c_fit is not None
        assert rows[0].t_c_fit == pytest.approx(1.16e-12, rel=0.05)

    def test_render(self, ppktp):
        rows = table_report(ppktp, [2.0], profile="sinc")
        text = render_table(rows)
        assert "correlation" in text.splitlines()[0]
        assert "decorrelated" in text
