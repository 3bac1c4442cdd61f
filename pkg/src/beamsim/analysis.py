"""Spectral attenuation between a source and the beamformer output."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import signal as sps

from .exceptions import ParameterError, RangeError
from .simulator import MonoSignal, align_to_source, check_sample_rate

DB_FLOOR = -120.0
DEFAULT_SEGMENT = 1024
DEFAULT_BAND = (300.0, 4000.0)


@dataclass(frozen=True)
class AttenuationSpectrum:
    """Per-bin levels in dB; ``attenuation_db = source_db - output_db``."""

    frequencies: np.ndarray
    source_db: np.ndarray
    output_db: np.ndarray
    attenuation_db: np.ndarray
    band: tuple[float, float]
    settings: dict = field(default_factory=dict)

    def peak(self, f_low: float | None = None,
             f_high: float | None = None) -> float:
        """Largest attenuation in ``[f_low, f_high]`` (default: whole band)."""
        return float(self._select(f_low, f_high).max())

    def _select(self, f_low, f_high) -> np.ndarray:
        f_low = self.band[0] if f_low is None else f_low
        f_high = self.band[1] if f_high is None else f_high
        if f_low < self.band[0] or f_high > self.band[1] or f_low > f_high:
            raise RangeError(
                f"[{f_low}, {f_high}] Hz is not inside band {self.band}")
        mask = (self.frequencies >= f_low) & (self.frequencies <= f_high)
        if not mask.any():
            raise RangeError(f"no frequency bins in [{f_low}, {f_high}] Hz")
        return self.attenuation_db[mask]


def amplitude_spectrum(samples: np.ndarray, sample_rate: float,
                       segment: int = DEFAULT_SEGMENT):
    """Averaged single-sided amplitude spectrum.

    Hann-windowed segments with 50 % overlap; per-segment magnitudes are
    averaged (not powers). A full-scale sinusoid on a bin centre reads as
    its amplitude.
    """
    if samples.size < segment:
        raise ParameterError(
            f"signal of {samples.size} samples is shorter than one "
            f"{segment}-sample segment")
    freqs, _, z = sps.stft(samples, fs=sample_rate, window="hann",
                           nperseg=segment, noverlap=segment // 2,
                           boundary=None, padded=False, detrend=False)
    return freqs, 2.0 * np.abs(z).mean(axis=-1)


def to_db(amplitude) -> np.ndarray:
    floor = 10.0 ** (DB_FLOOR / 20.0)
    return 20.0 * np.log10(np.maximum(amplitude, floor))


def attenuation_spectrum(source: MonoSignal, output: MonoSignal,
                         band: tuple[float, float] = DEFAULT_BAND,
                         resolution: float | None = None,
                         latency: float | None = None) -> AttenuationSpectrum:
    """Compare source and beamformer-output spectra over `band`.

    Parameters
    ----------
    source, output : MonoSignal
        `output` is shifted back by `latency` samples before comparison
        (default: ``output.latency`` as reported by the simulator). Only the
        region outside both signals' warm-up edges is analysed.
    band : (float, float)
        Frequency range in Hz.
    resolution : float, optional
        Bin spacing in Hz; sets the segment length to ``fs / resolution``.
        Defaults to 1024-sample segments.
    """
    fs = source.sample_rate
    if output.sample_rate != fs:
        raise ParameterError(
            f"sample rates differ: {fs} Hz vs {output.sample_rate} Hz")
    f_low, f_high = map(float, band)
    if not (0 <= f_low < f_high):
        raise ParameterError(f"invalid band {band}")
    if f_high > fs / 2:
        raise RangeError(f"band edge {f_high} Hz exceeds Nyquist {fs / 2} Hz")
    check_sample_rate(fs, f_high)
    segment = DEFAULT_SEGMENT if resolution is None \
        else int(round(fs / resolution))
    if segment < 2:
        raise ParameterError(f"resolution {resolution} Hz is too coarse")

    aligned = align_to_source(output, latency)
    edge = max(source.edge, aligned.edge)
    n = min(len(source), len(aligned))
    region = slice(edge, n - edge)
    freqs, src_amp = amplitude_spectrum(source.samples[region], fs, segment)
    _, out_amp = amplitude_spectrum(aligned.samples[region], fs, segment)

    mask = (freqs >= f_low) & (freqs <= f_high)
    source_db = to_db(src_amp[mask])
    output_db = to_db(out_amp[mask])
    settings = {"estimator": "averaged-magnitude periodogram",
                "window": "hann", "segment": segment,
                "overlap": segment // 2, "db_floor": DB_FLOOR,
                "analysed_samples": int(max(0, n - 2 * edge)),
                "latency_samples": float(output.latency if latency is None
                                         else latency)}
    return AttenuationSpectrum(freqs[mask], source_db, output_db,
                               source_db - output_db, (f_low, f_high),
                               settings)


def band_average_attenuation(spectrum: AttenuationSpectrum, f_low: float,
                             f_high: float) -> float:
    """Mean attenuation (dB) over the bins in ``[f_low, f_high]``."""
    return float(np.mean(spectrum._select(f_low, f_high)))
