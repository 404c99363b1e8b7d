"""Joint temporal amplitude and timing-information accounting.

The JTA is the centered 2-D Fourier transform of the JSA with the
``exp(-i nu t)`` sign convention and a ``1/(2 pi)`` weight per axis, which
makes the transform unitary (Parseval holds between the sampled integrals).
The frequency grid is zero-padded before transforming so the conjugate time
step ``dt = 2 pi / (N dnu)`` resolves the temporal structure; the padding
factor only refines the sampling, it adds no information.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoverageError, DomainError, GridError
from .jsa import JointSpectralAmplitude, intensity_fwhm
from .spectral import PumpSpec, tabulated_pump_duration

DEFAULT_OVERSAMPLE = 4

# Parseval mismatch above this aborts: it indicates a broken transform.
_PARSEVAL_TOL = 1e-9


@dataclass(frozen=True)
class JointTemporalAmplitude:
    """Complex pair amplitude over (t_s, t_i), conjugate to a source JSA."""

    times: np.ndarray  # shared 1-D axis for both photons (s)
    amplitude: np.ndarray
    provenance: dict

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        amp = np.asarray(self.amplitude, dtype=complex)
        if t.ndim != 1 or amp.shape != (t.size, t.size):
            raise GridError("JTA needs a square amplitude on a shared 1-D time axis")
        t = t.copy()
        amp = amp.copy()
        t.flags.writeable = False
        amp.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "amplitude", amp)

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])


@dataclass(frozen=True)
class TimingReport:
    """Biphoton timing widths against the pump duration.

    ``gain_minus``/``gain_plus`` are pump_duration over the difference-time
    and sum-time FWHMs; a ratio above 1 means the pair resolves finer than
    the pump along that coordinate.  The ratio definition is a convention of
    this package, not a measured quantity.
    """

    dt_minus: float
    dt_plus: float
    pump_duration: float
    gain_minus: float
    gain_plus: float

    def __post_init__(self):
        for name in ("dt_minus", "dt_plus", "pump_duration"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0")


def jta_from_jsa(
    state: JointSpectralAmplitude, oversample: int = DEFAULT_OVERSAMPLE
) -> JointTemporalAmplitude:
    """Centered 2-D Fourier transform of a square-grid JSA.

    Raises GridError for non-square grids and checks Parseval conservation
    to 1e-9 relative.
    """
    if not state.grid.is_square:
        raise GridError("temporal transform needs a square symmetric grid")
    if oversample < 1:
        raise DomainError(f"oversample must be >= 1, got {oversample}")
    n = state.grid.n_s
    dnu = state.grid.d_nu_s
    big_n = int(oversample) * n
    padded = np.zeros((big_n, big_n), dtype=complex)
    start = (big_n - n) // 2
    padded[start : start + n, start : start + n] = state.amplitude

    out = np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(padded)))
    out *= dnu * dnu / (2.0 * math.pi)
    dt = 2.0 * math.pi / (big_n * dnu)
    times = (np.arange(big_n) - big_n // 2) * dt

    power_nu = float(np.sum(np.abs(state.amplitude) ** 2)) * dnu * dnu
    power_t = float(np.sum(np.abs(out) ** 2)) * dt * dt
    mismatch = abs(power_nu - power_t) / power_nu
    if mismatch > _PARSEVAL_TOL:
        raise RuntimeError(f"Parseval violated by the transform: {mismatch:.3e}")

    prov = dict(state.provenance)
    prov["transform"] = {"oversample": int(oversample), "parseval_mismatch": mismatch}
    return JointTemporalAmplitude(times=times, amplitude=out, provenance=prov)


def diagonal_widths(jta: JointTemporalAmplitude) -> tuple[float, float]:
    """FWHMs of |JTA|^2 projected on the difference and sum time coordinates.

    Projections are exact anti-diagonal/diagonal bin sums (bin width equals
    the grid dt), reported directly in ``t_s - t_i`` and ``t_s + t_i``.

    For gaussian-profile states the difference width coincides with the
    interference-dip FWHM; for rect-like temporal profiles (sinc
    phasematching) the dip is the narrower autocorrelation of the profile,
    so the two differ by up to a factor of two.
    """
    power = np.abs(jta.amplitude) ** 2
    n = jta.times.size
    dt = jta.dt
    idx = np.arange(n)
    j_idx, k_idx = np.meshgrid(idx, idx, indexing="ij")
    minus = np.bincount((j_idx - k_idx + n - 1).ravel(), weights=power.ravel(), minlength=2 * n - 1)
    plus = np.bincount((j_idx + k_idx).ravel(), weights=power.ravel(), minlength=2 * n - 1)
    axis = (np.arange(2 * n - 1) - (n - 1)) * dt
    try:
        dt_minus = intensity_fwhm(axis, minus)
        dt_plus = intensity_fwhm(axis, plus)
    except CoverageError as exc:
        raise CoverageError(f"diagonal projection truncated by the time window: {exc}") from exc
    return dt_minus, dt_plus


def timing_gain(jta: JointTemporalAmplitude, pump: PumpSpec) -> TimingReport:
    """Compare biphoton timing widths with the (chirp-corrected) pump duration."""
    dt_minus, dt_plus = diagonal_widths(jta)
    pump_duration = tabulated_pump_duration(pump)
    return TimingReport(
        dt_minus=dt_minus,
        dt_plus=dt_plus,
        pump_duration=pump_duration,
        gain_minus=pump_duration / dt_minus,
        gain_plus=pump_duration / dt_plus,
    )
