"""File formats, dip fitting and the summary table.

CSV conventions
---------------
* measured scans: header ``delay_ps,coincidences[,sigma]`` (or ``delay_mm``
  for double-pass stage travel, converted as ``tau = 2 x / c``);
* joint spectra: ``lambda_s_nm,lambda_i_nm,intensity`` with wavelength axes,
  or ``nu_s_rad_s,nu_i_rad_s,intensity`` with detuning axes;
* joint amplitudes: ``nu_s_rad_s,nu_i_rad_s,re,im``.

Leading ``#`` lines are preserved comments; files written here start with a
single ``# biphoton: {json}`` provenance line when metadata is supplied.
Floats are written with 9 significant digits, which round-trips exactly
through parse/format cycles and keeps repeated runs byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import curve_fit

from .errors import DomainError, FitError, ParseError
from .hom import DelayScan, coincidence_scan, default_delays, extract_dip
from .jsa import (
    FrequencyGrid,
    JointSpectralAmplitude,
    auto_grid,
    build_jsa,
    correlation_classification,
    intensity_fwhm,
    marginals,
)
from .presets import SourcePreset, preset_with_pump
from .spectral import (
    C_M_PER_S,
    omega_fwhm_to_wavelength_fwhm,
    transform_limited_duration,
    wavelength_to_angular_frequency,
)

PROVENANCE_PREFIX = "# biphoton: "

_FOUR_LN2 = 4.0 * math.log(2.0)


def format_float(x: float) -> str:
    """Canonical 9-significant-digit float formatting for all CSV output."""
    return f"{float(x):.9g}"


def provenance_line(meta: dict) -> str:
    return PROVENANCE_PREFIX + json.dumps(meta, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class MeasuredScan:
    """A measured coincidence scan: delays (s), counts, optional uncertainties."""

    delays: np.ndarray
    counts: np.ndarray
    sigma: np.ndarray | None = None
    comments: tuple[str, ...] = ()

    def __post_init__(self):
        delays = np.asarray(self.delays, dtype=float)
        counts = np.asarray(self.counts, dtype=float)
        if delays.ndim != 1 or delays.shape != counts.shape:
            raise DomainError("delays and counts must be 1-D arrays of equal length")
        if delays.size < 10:
            raise DomainError(f"need at least 10 points, got {delays.size}")
        if not np.all(np.diff(delays) > 0):
            raise DomainError("delays must be strictly increasing")
        if np.any(counts < 0):
            raise DomainError("counts must be non-negative")
        object.__setattr__(self, "delays", _frozen(delays))
        object.__setattr__(self, "counts", _frozen(counts))
        if self.sigma is not None:
            sigma = np.asarray(self.sigma, dtype=float)
            if sigma.shape != delays.shape or np.any(sigma < 0):
                raise DomainError("sigma must match delays and be non-negative")
            object.__setattr__(self, "sigma", _frozen(sigma))


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


def load_scan(path) -> MeasuredScan:
    """Read a measured scan CSV; delay unit comes from the header, never guessed."""
    path = Path(path)
    comments: list[str] = []
    header: list[str] | None = None
    delays: list[float] = []
    counts: list[float] = []
    sigmas: list[float] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(raw)
            continue
        cells = [c.strip() for c in line.split(",")]
        if header is None:
            header = cells
            if header[0] not in ("delay_ps", "delay_mm"):
                raise ParseError(
                    f"{path}:{lineno}: first column must be delay_ps or delay_mm, "
                    f"got {header[0]!r}"
                )
            if len(header) < 2 or header[1] != "coincidences":
                raise ParseError(f"{path}:{lineno}: second column must be coincidences")
            if len(header) > 3 or (len(header) == 3 and header[2] != "sigma"):
                raise ParseError(f"{path}:{lineno}: unexpected columns {header[2:]}")
            continue
        if len(cells) != len(header):
            raise ParseError(
                f"{path}:{lineno}: expected {len(header)} columns, got {len(cells)}"
            )
        try:
            values = [float(c) for c in cells]
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: non-numeric cell in {raw!r}") from exc
        delays.append(values[0])
        counts.append(values[1])
        if len(values) == 3:
            sigmas.append(values[2])
    if header is None:
        raise ParseError(f"{path}: no header row found")
    if not delays:
        raise ParseError(f"{path}: no data rows found")

    d = np.asarray(delays)
    if header[0] == "delay_ps":
        delays_s = d * 1e-12
    else:
        # double-pass delay stage: path difference is twice the travel
        delays_s = 2.0 * d * 1e-3 / C_M_PER_S
    for check, message in (
        (np.all(np.diff(delays_s) > 0), "delays are not strictly increasing"),
        (not np.any(np.asarray(counts) < 0), "negative counts"),
    ):
        if not check:
            raise ParseError(f"{path}: {message}")
    return MeasuredScan(
        delays=delays_s,
        counts=np.asarray(counts),
        sigma=np.asarray(sigmas) if sigmas else None,
        comments=tuple(comments),
    )


def export_scan(scan: MeasuredScan, path, meta: dict | None = None) -> None:
    """Write a measured scan in the canonical CSV layout (delays in ps)."""
    path = Path(path)
    lines: list[str] = []
    if meta is not None:
        lines.append(provenance_line(meta))
    lines.extend(scan.comments)
    has_sigma = scan.sigma is not None
    lines.append("delay_ps,coincidences,sigma" if has_sigma else "delay_ps,coincidences")
    for k in range(scan.delays.size):
        row = [format_float(scan.delays[k] * 1e12), format_float(scan.counts[k])]
        if has_sigma:
            row.append(format_float(scan.sigma[k]))
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def export_delay_scan(scan: DelayScan, path, meta: dict | None = None) -> None:
    """Write a simulated scan as ``tau_ps,rate``."""
    path = Path(path)
    lines = [] if meta is None else [provenance_line(meta)]
    lines.append("tau_ps,rate")
    for tau, rate in zip(scan.delays, scan.rates):
        lines.append(f"{format_float(tau * 1e12)},{format_float(rate)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def export_jsa_csv(state: JointSpectralAmplitude, path, meta: dict | None = None) -> None:
    """Write the complex amplitude as ``nu_s_rad_s,nu_i_rad_s,re,im``."""
    path = Path(path)
    header_meta = {"grid": _grid_meta(state.grid), "provenance": state.provenance}
    if meta:
        header_meta.update(meta)
    lines = [provenance_line(header_meta), "nu_s_rad_s,nu_i_rad_s,re,im"]
    nu_s = state.grid.nu_s
    nu_i = state.grid.nu_i
    amp = state.amplitude
    for j in range(nu_s.size):
        for k in range(nu_i.size):
            lines.append(
                ",".join(
                    (
                        format_float(nu_s[j]),
                        format_float(nu_i[k]),
                        format_float(amp[j, k].real),
                        format_float(amp[j, k].imag),
                    )
                )
            )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def export_jsi_csv(
    state: JointSpectralAmplitude, path, meta: dict | None = None, axes: str = "nm"
) -> None:
    """Write |f|^2 with nm axes (default) or rad/s detuning axes."""
    path = Path(path)
    header_meta = {"grid": _grid_meta(state.grid), "provenance": state.provenance}
    if meta:
        header_meta.update(meta)
    intensity = np.abs(state.amplitude) ** 2
    lines = [provenance_line(header_meta)]
    if axes == "nm":
        omega_s0, omega_i0 = _central_frequencies(state)
        lam_s = 2.0 * math.pi * C_M_PER_S / (omega_s0 + state.grid.nu_s) * 1e9
        lam_i = 2.0 * math.pi * C_M_PER_S / (omega_i0 + state.grid.nu_i) * 1e9
        lines.append("lambda_s_nm,lambda_i_nm,intensity")
        col_s, col_i = lam_s, lam_i
    elif axes == "rad_s":
        lines.append("nu_s_rad_s,nu_i_rad_s,intensity")
        col_s, col_i = state.grid.nu_s, state.grid.nu_i
    else:
        raise DomainError(f"axes must be 'nm' or 'rad_s', got {axes!r}")
    for j in range(col_s.size):
        for k in range(col_i.size):
            lines.append(
                f"{format_float(col_s[j])},{format_float(col_i[k])},"
                f"{format_float(intensity[j, k])}"
            )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def export_jta_csv(jta, path, meta: dict | None = None) -> None:
    """Write a joint temporal amplitude as ``t_s_ps,t_i_ps,re,im``."""
    path = Path(path)
    header_meta = {"dt_s": jta.dt, "n": int(jta.times.size), "provenance": jta.provenance}
    if meta:
        header_meta.update(meta)
    lines = [provenance_line(header_meta), "t_s_ps,t_i_ps,re,im"]
    times_ps = jta.times * 1e12
    amp = jta.amplitude
    for j in range(times_ps.size):
        for k in range(times_ps.size):
            lines.append(
                ",".join(
                    (
                        format_float(times_ps[j]),
                        format_float(times_ps[k]),
                        format_float(amp[j, k].real),
                        format_float(amp[j, k].imag),
                    )
                )
            )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _grid_meta(grid: FrequencyGrid) -> dict:
    return {
        "n_s": grid.n_s,
        "n_i": grid.n_i,
        "nu_s_min": grid.nu_s_min,
        "nu_s_max": grid.nu_s_max,
        "nu_i_min": grid.nu_i_min,
        "nu_i_max": grid.nu_i_max,
    }


def _central_frequencies(state: JointSpectralAmplitude) -> tuple[float, float]:
    prov = state.provenance
    if "pm" in prov and "omega_s0" in prov["pm"]:
        return prov["pm"]["omega_s0"], prov["pm"]["omega_i0"]
    if "omega_s0" in prov:
        return prov["omega_s0"], prov["omega_i0"]
    raise DomainError("state provenance does not carry central frequencies")


def load_jsi(path) -> JointSpectralAmplitude:
    """Read a measured joint spectral intensity grid.

    Wavelength axes are converted to detunings about the axis midpoint; the
    amplitude is sqrt(intensity) with zero phase, and the provenance is
    flagged accordingly so downstream interference predictions can be
    labeled approximate.
    """
    path = Path(path)
    header: list[str] | None = None
    rows: list[tuple[float, float, float]] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if header is None:
            header = cells
            if header not in (
                ["lambda_s_nm", "lambda_i_nm", "intensity"],
                ["nu_s_rad_s", "nu_i_rad_s", "intensity"],
            ):
                raise ParseError(f"{path}:{lineno}: unrecognized JSI header {header}")
            continue
        if len(cells) != 3:
            raise ParseError(f"{path}:{lineno}: expected 3 columns, got {len(cells)}")
        try:
            rows.append((float(cells[0]), float(cells[1]), float(cells[2])))
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: non-numeric cell in {raw!r}") from exc
    if header is None or not rows:
        raise ParseError(f"{path}: no data found")

    data = np.asarray(rows)
    if np.any(data[:, 2] < 0):
        raise ParseError(f"{path}: negative intensities")
    axis_s = np.unique(data[:, 0])
    axis_i = np.unique(data[:, 1])
    if axis_s.size * axis_i.size != data.shape[0]:
        raise ParseError(
            f"{path}: rows do not form a full {axis_s.size}x{axis_i.size} grid"
        )

    in_nm = header[0] == "lambda_s_nm"
    if in_nm:
        omega_s = wavelength_to_angular_frequency(axis_s * 1e-9)
        omega_i = wavelength_to_angular_frequency(axis_i * 1e-9)
    else:
        omega_s, omega_i = axis_s.copy(), axis_i.copy()

    intensity = np.zeros((axis_s.size, axis_i.size))
    index_s = {v: j for j, v in enumerate(axis_s)}
    index_i = {v: k for k, v in enumerate(axis_i)}
    for ls, li, value in rows:
        intensity[index_s[ls], index_i[li]] = value

    warnings: list[str] = []
    if in_nm:
        omega_s0 = 0.5 * (omega_s.min() + omega_s.max())
        omega_i0 = 0.5 * (omega_i.min() + omega_i.max())
        nu_s = omega_s - omega_s0
        nu_i = omega_i - omega_i0
        # wavelength-spaced axes are not exactly uniform in frequency; snap
        # to a uniform grid and record how far interior points moved
        order_s = np.argsort(nu_s)
        order_i = np.argsort(nu_i)
        nu_s, nu_i = nu_s[order_s], nu_i[order_i]
        intensity = intensity[np.ix_(order_s, order_i)]
        dev = 0.0
        for ax in (nu_s, nu_i):
            uniform = np.linspace(ax[0], ax[-1], ax.size)
            spacing = uniform[1] - uniform[0]
            dev = max(dev, float(np.max(np.abs(ax - uniform)) / spacing))
        if dev > 0.05:
            warnings.append(
                f"wavelength axes deviate from uniform frequency spacing by "
                f"{dev:.1%} of one step (snapped to uniform)"
            )
        grid = FrequencyGrid(
            nu_s.size, nu_i.size, float(nu_s[0]), float(nu_s[-1]), float(nu_i[0]), float(nu_i[-1])
        )
    else:
        omega_s0 = omega_i0 = 0.0
        grid = FrequencyGrid(
            omega_s.size,
            omega_i.size,
            float(omega_s[0]),
            float(omega_s[-1]),
            float(omega_i[0]),
            float(omega_i[-1]),
        )

    provenance = {
        "kind": "measured",
        "source": str(path),
        "phase_assumed_zero": True,
        "omega_s0": float(omega_s0),
        "omega_i0": float(omega_i0),
        "warnings": warnings,
    }
    return JointSpectralAmplitude(grid, np.sqrt(intensity), provenance)


@dataclass(frozen=True)
class DipKernel:
    """Normalized dip shape D(u): depth 1 at the minimum, FWHM 1 in u."""

    u: np.ndarray
    depth: np.ndarray
    label: str = "sinc-kernel"

    def __call__(self, u) -> np.ndarray:
        return np.interp(np.asarray(u, dtype=float), self.u, self.depth, left=0.0, right=0.0)


def sinc_dip_kernel(preset: SourcePreset, pump_fwhm_nm: float, n_grid: int = 512) -> DipKernel:
    """Dip shape from a sinc-profile simulation of the given source.

    Plays the role of the 'exact joint-spectrum' dip model when fitting
    measured scans from a sinc-phasematched device.
    """
    src = preset_with_pump(preset, pump_fwhm_nm=pump_fwhm_nm, profile="sinc")
    state = build_jsa(src.pump, src.pm, grid=None)
    delays = default_delays(src.pm, n=801, spans=4.0)
    scan = coincidence_scan(state, delays)
    depth = 1.0 - scan.rates
    depth = depth / depth.max()
    width = intensity_fwhm(scan.delays, depth)
    center = scan.delays[int(np.argmax(depth))]
    return DipKernel(u=(scan.delays - center) / width, depth=depth)


def _gaussian_depth(u) -> np.ndarray:
    # unit-FWHM Gaussian dip shape
    u = np.asarray(u, dtype=float)
    return np.exp(-_FOUR_LN2 * u * u)


@dataclass(frozen=True)
class FitReport:
    """Weighted least-squares dip fit results."""

    t_c: float
    t_c_sigma: float
    visibility: float
    visibility_sigma: float
    baseline: float
    center: float
    model: str
    residual_rms: float
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.t_c > 0:
            raise DomainError(f"fitted t_c must be > 0, got {self.t_c}")
        if self.t_c_sigma < 0 or self.visibility_sigma < 0:
            raise DomainError("uncertainties must be non-negative")

    def to_dict(self) -> dict:
        return {
            "t_c_ps": self.t_c * 1e12,
            "t_c_sigma_ps": self.t_c_sigma * 1e12,
            "visibility": self.visibility,
            "visibility_sigma": self.visibility_sigma,
            "baseline": self.baseline,
            "center_ps": self.center * 1e12,
            "model": self.model,
            "residual_rms": self.residual_rms,
            "warnings": list(self.warnings),
        }


def fit_dip(scan: MeasuredScan, model: str = "gaussian-dip", kernel: DipKernel | None = None) -> FitReport:
    """Fit (baseline, visibility, center, width) to a measured scan.

    ``model`` is ``gaussian-dip`` or ``sinc-kernel-dip`` (``kernel``
    required for the latter).  Counts with a sigma column are weighted by
    it; integer-looking raw counts get Poisson sqrt(n) weights; otherwise
    the fit is unweighted.  The fitted width parameter is the dip intensity
    FWHM, reported with its covariance-based uncertainty.
    """
    if model == "gaussian-dip":
        shape = _gaussian_depth
    elif model == "sinc-kernel-dip":
        if kernel is None:
            raise DomainError("sinc-kernel-dip fitting needs a DipKernel")
        shape = kernel
    else:
        raise DomainError(f"unknown dip model {model!r}")

    delays = scan.delays
    counts = scan.counts
    if not np.any(counts > 0):
        raise DomainError("scan has no positive counts")

    edge = max(2, delays.size // 10)
    baseline0 = float(np.mean(np.concatenate([counts[:edge], counts[-edge:]])))
    if baseline0 <= 0:
        baseline0 = float(np.max(counts))
    imin = int(np.argmin(counts))
    vis0 = min(max(1.0 - counts[imin] / baseline0, 0.05), 1.0)
    center0 = float(delays[imin])
    try:
        width0 = intensity_fwhm(delays, np.clip(baseline0 - counts, 0.0, None))
    except Exception:
        width0 = (delays[-1] - delays[0]) / 4.0

    # fit in dimensionless units (delays over width0, counts over baseline0):
    # second-scale widths next to 1e4-scale counts otherwise wreck the
    # conditioning of the trust-region solver
    x = delays / width0
    y = counts / baseline0

    def model_scaled(xv, baseline, visibility, center, width):
        return baseline * (1.0 - visibility * shape((xv - center) / width))

    if scan.sigma is not None:
        sigma = np.clip(scan.sigma, 1e-12 * max(1.0, counts.max()), None) / baseline0
        absolute = True
    elif np.allclose(counts, np.round(counts)) and counts.max() >= 10:
        sigma = np.sqrt(np.clip(counts, 1.0, None)) / baseline0
        absolute = True
    else:
        sigma = None
        absolute = False

    try:
        popt, pcov = curve_fit(
            model_scaled,
            x,
            y,
            p0=[1.0, vis0, center0 / width0, 1.0],
            sigma=sigma,
            absolute_sigma=absolute,
            bounds=([0.0, 0.0, x[0], 1e-3], [np.inf, 1.2, x[-1], np.inf]),
            maxfev=20000,
        )
    except (RuntimeError, ValueError) as exc:
        raise FitError(
            f"dip fit did not converge (model={model}, "
            f"p0={[baseline0, vis0, center0, width0]})"
        ) from exc

    perr = np.sqrt(np.clip(np.diag(pcov), 0.0, None))
    if not np.all(np.isfinite(perr)):
        raise FitError("singular fit covariance; scan does not constrain the dip")
    residuals = (y - model_scaled(x, *popt)) * baseline0
    warnings: list[str] = []
    if not 0.0 <= popt[1] <= 1.05:
        warnings.append(f"fitted visibility {popt[1]:.3f} outside [0, 1.05]: model mismatch?")
    return FitReport(
        t_c=float(popt[3] * width0),
        t_c_sigma=float(perr[3] * width0),
        visibility=float(popt[1]),
        visibility_sigma=float(perr[1]),
        baseline=float(popt[0] * baseline0),
        center=float(popt[2] * width0),
        model=model,
        residual_rms=float(np.sqrt(np.mean(residuals**2))),
        warnings=tuple(warnings),
    )


def convolved_duration(center_wavelength: float, fwhm_a: float, fwhm_b: float) -> float:
    """Quadrature sum of the transform-limited durations of two spectra."""
    return math.hypot(
        transform_limited_duration(center_wavelength, fwhm_a),
        transform_limited_duration(center_wavelength, fwhm_b),
    )


@dataclass(frozen=True)
class TableRow:
    """One operating point of the source: simulated values plus optional fit."""

    label: str
    pump_fwhm_nm: float
    t_c_sim: float
    marginal_s_nm: float
    marginal_i_nm: float
    duration_s: float
    duration_i: float
    duration_pump: float
    duration_conv: float
    rho: float
    t_c_fit: float | None = None
    t_c_fit_sigma: float | None = None

    def to_dict(self) -> dict:
        out = {
            "correlation": self.label,
            "pump_fwhm_nm": self.pump_fwhm_nm,
            "t_c_sim_ps": self.t_c_sim * 1e12,
            "marginal_s_nm": self.marginal_s_nm,
            "marginal_i_nm": self.marginal_i_nm,
            "duration_s_ps": self.duration_s * 1e12,
            "duration_i_ps": self.duration_i * 1e12,
            "duration_pump_ps": self.duration_pump * 1e12,
            "duration_conv_ps": self.duration_conv * 1e12,
            "rho": self.rho,
        }
        if self.t_c_fit is not None:
            out["t_c_fit_ps"] = self.t_c_fit * 1e12
            out["t_c_fit_sigma_ps"] = (self.t_c_fit_sigma or 0.0) * 1e12
        return out


def table_report(
    preset: SourcePreset,
    pump_fwhms_nm,
    measurements: dict[float, MeasuredScan] | None = None,
    profile: str = "sinc",
    grid_n: int = 512,
) -> list[TableRow]:
    """Simulate every tabulated quantity for a list of pump widths.

    For each pump width: the sinc-model (or gaussian-model) dip width and
    correlation label, the marginal FWHMs in nm, the transform-limited
    durations of pump and marginals, and their quadrature convolution.  If a
    matching measured scan is supplied, a gaussian-dip fit is appended.
    """
    lam_pump = 2.0 * math.pi * C_M_PER_S / preset.pump.omega_p0
    lam_pdc = 2.0 * math.pi * C_M_PER_S / preset.pm.omega_s0
    rows: list[TableRow] = []
    for width_nm in pump_fwhms_nm:
        src = preset_with_pump(preset, pump_fwhm_nm=width_nm, profile=profile)
        state = build_jsa(src.pump, src.pm, auto_grid(src.pump, src.pm, n=grid_n))
        scan = coincidence_scan(state, default_delays(src.pm))
        dip = extract_dip(scan)
        sig, idl = marginals(state)
        fwhm_s = intensity_fwhm(state.grid.nu_s, sig)
        fwhm_i = intensity_fwhm(state.grid.nu_i, idl)
        dl_s = omega_fwhm_to_wavelength_fwhm(lam_pdc, fwhm_s)
        dl_i = omega_fwhm_to_wavelength_fwhm(lam_pdc, fwhm_i)
        rho, label = correlation_classification(state)
        fit_tc = fit_tc_sigma = None
        if measurements and width_nm in measurements:
            report = fit_dip(measurements[width_nm], model="gaussian-dip")
            fit_tc, fit_tc_sigma = report.t_c, report.t_c_sigma
        rows.append(
            TableRow(
                label=label,
                pump_fwhm_nm=float(width_nm),
                t_c_sim=dip.t_c,
                marginal_s_nm=dl_s * 1e9,
                marginal_i_nm=dl_i * 1e9,
                duration_s=transform_limited_duration(lam_pdc, dl_s),
                duration_i=transform_limited_duration(lam_pdc, dl_i),
                duration_pump=transform_limited_duration(lam_pump, width_nm * 1e-9),
                duration_conv=convolved_duration(lam_pdc, dl_s, dl_i),
                rho=rho,
                t_c_fit=fit_tc,
                t_c_fit_sigma=fit_tc_sigma,
            )
        )
    return rows


def render_table(rows: list[TableRow]) -> str:
    """Aligned-text rendering of :func:`table_report` output."""
    headers = [
        "correlation",
        "pump_nm",
        "t_c_ps",
        "dl_s_nm",
        "dl_i_nm",
        "dtau_s_ps",
        "dtau_i_ps",
        "dtau_p_ps",
        "dtau_conv_ps",
        "rho",
    ]
    table = [headers]
    for r in rows:
        table.append(
            [
                r.label,
                f"{r.pump_fwhm_nm:g}",
                f"{r.t_c_sim * 1e12:.3f}",
                f"{r.marginal_s_nm:.2f}",
                f"{r.marginal_i_nm:.2f}",
                f"{r.duration_s * 1e12:.2f}",
                f"{r.duration_i * 1e12:.2f}",
                f"{r.duration_pump * 1e12:.2f}",
                f"{r.duration_conv * 1e12:.2f}",
                f"{r.rho:+.3f}",
            ]
        )
    widths = [max(len(row[c]) for row in table) for c in range(len(headers))]
    lines = ["  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)) for row in table]
    return "\n".join(lines)
