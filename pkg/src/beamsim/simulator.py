"""Time-domain far-field simulation of a delay-and-sum array.

A source signal is delayed once per microphone to synthesize the capture,
each channel is then re-aligned with the steering delays and the channels
are averaged. Sub-sample shifts use a Hann-windowed sinc interpolator.

Negative delays are never applied directly. Each stage adds a constant
offset of ``ceil(aperture / (2c) * fs)`` samples so every applied delay is
non-negative; the offsets accumulate in ``latency`` so a steered capture
(``theta == phi``) comes out as the source delayed by an integer number of
samples.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .exceptions import GeometryMismatchError, ParameterError, RangeError
from .geometry import ArrayGeometry, Medium, physical_delays, steering_delays

DEFAULT_HALF_WIDTH = 64
MIN_HALF_WIDTH = 8
# Sampling must be at least this multiple of the highest analysed frequency.
OVERSAMPLING_RATIO = 4.0


class SampleRateWarning(UserWarning):
    """Sample rate is below four times the highest frequency of interest."""


def check_sample_rate(sample_rate: float, top_frequency: float) -> bool:
    """Warn and return False when `sample_rate` < 4 x `top_frequency`."""
    if sample_rate < OVERSAMPLING_RATIO * top_frequency:
        warnings.warn(
            f"sample rate {sample_rate} Hz is below {OVERSAMPLING_RATIO:g} x "
            f"{top_frequency} Hz; fractional delays lose accuracy",
            SampleRateWarning, stacklevel=2)
        return False
    return True


@dataclass(frozen=True)
class InterpolatorSpec:
    kind: str = "windowed-sinc"
    half_width: int = DEFAULT_HALF_WIDTH
    window: str = "hann"

    def __post_init__(self):
        if self.kind != "windowed-sinc" or self.window != "hann":
            raise ParameterError(
                f"unsupported interpolator {self.kind}/{self.window}")
        if int(self.half_width) != self.half_width \
                or self.half_width < MIN_HALF_WIDTH:
            raise ParameterError(
                f"half_width must be an integer >= {MIN_HALF_WIDTH}, "
                f"got {self.half_width!r}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "half_width": self.half_width,
                "window": self.window}


@dataclass(frozen=True)
class MonoSignal:
    """Sampled real signal.

    ``latency`` is the accumulated processing delay in samples relative to
    the original source, ``edge`` the number of warm-up samples at each end
    that should be excluded from error metrics.
    """

    samples: np.ndarray
    sample_rate: float
    latency: float = 0.0
    edge: int = 0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1:
            raise ParameterError("MonoSignal samples must be one-dimensional")
        if not np.all(np.isfinite(samples)):
            raise ParameterError("MonoSignal samples must be finite")
        if not (math.isfinite(self.sample_rate) and self.sample_rate > 0):
            raise ParameterError(
                f"sample_rate must be positive, got {self.sample_rate!r}")
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.size

    @property
    def valid(self) -> slice:
        """Slice covering the samples outside both warm-up regions."""
        return slice(self.edge, max(self.edge, len(self) - self.edge))


@dataclass(frozen=True)
class MultichannelCapture:
    """Simulated microphone outputs, one row per microphone (k = 1..N)."""

    channels: np.ndarray
    sample_rate: float
    geometry: ArrayGeometry
    arrival_angle: float
    medium: Medium = Medium()
    latency: float = 0.0
    edge: int = 0

    def __post_init__(self):
        channels = np.atleast_2d(np.asarray(self.channels, dtype=float))
        if channels.shape[0] != self.geometry.mic_count:
            raise GeometryMismatchError(
                f"capture has {channels.shape[0]} channels, geometry expects "
                f"{self.geometry.mic_count}")
        object.__setattr__(self, "channels", channels)


def _sinc_taps(frac: float, half_width: int) -> np.ndarray:
    offsets = np.arange(-half_width, half_width + 1) - frac
    window = 0.5 * (1.0 + np.cos(np.pi * offsets / (half_width + 1)))
    taps = np.sinc(offsets) * window
    return taps / taps.sum()


def delay_samples(x: np.ndarray, delay: float,
                  half_width: int = DEFAULT_HALF_WIDTH) -> np.ndarray:
    """Shift `x` by `delay` samples (positive lags), keeping its length.

    ``y[n] ~ x(n - delay)``; samples that would come from outside `x` are
    treated as zero.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    whole = math.floor(delay)
    frac = delay - whole
    out = np.zeros(n)
    if frac == 0.0:
        src = np.arange(n) - whole
        ok = (src >= 0) & (src < n)
        out[ok] = x[src[ok]]
        return out
    full = np.convolve(x, _sinc_taps(frac, half_width))
    idx = np.arange(n) - whole + half_width
    ok = (idx >= 0) & (idx < full.size)
    out[ok] = full[idx[ok]]
    return out


def fractional_delay(signal: MonoSignal, delay_seconds: float,
                     spec: InterpolatorSpec = InterpolatorSpec()) -> MonoSignal:
    """Return ``s(t - delay_seconds)`` sampled on the original grid."""
    shift = delay_seconds * signal.sample_rate
    if abs(shift) > len(signal):
        raise RangeError(
            f"delay of {shift:.3f} samples exceeds signal length "
            f"{len(signal)}")
    out = delay_samples(signal.samples, shift, spec.half_width)
    edge = signal.edge + spec.half_width + math.ceil(abs(shift))
    return MonoSignal(out, signal.sample_rate, signal.latency + shift, edge)


def stage_offset(geom: ArrayGeometry, medium: Medium,
                 sample_rate: float) -> int:
    """Whole-sample offset that makes every per-channel delay non-negative."""
    return math.ceil(geom.max_delay(medium) * sample_rate - 1e-9)


def propagate(source: MonoSignal, geom: ArrayGeometry, theta: float,
              medium: Medium = Medium(),
              spec: InterpolatorSpec = InterpolatorSpec()
              ) -> MultichannelCapture:
    """Synthesize the microphone outputs for a plane wave from `theta`."""
    fs = source.sample_rate
    offset = stage_offset(geom, medium, fs)
    applied = offset + physical_delays(geom, theta, medium) * fs
    channels = np.stack([delay_samples(source.samples, d, spec.half_width)
                         for d in applied])
    edge = source.edge + spec.half_width + math.ceil(applied.max())
    return MultichannelCapture(channels, fs, geom, theta, medium,
                               source.latency + offset, edge)


def beamform(capture: MultichannelCapture, phi: float,
             medium: Medium | None = None,
             spec: InterpolatorSpec = InterpolatorSpec()) -> MonoSignal:
    """Steer the capture towards `phi` and average the channels."""
    geom = capture.geometry
    if capture.channels.shape[0] != geom.mic_count:
        raise GeometryMismatchError(
            f"capture has {capture.channels.shape[0]} channels, geometry "
            f"expects {geom.mic_count}")
    medium = capture.medium if medium is None else medium
    fs = capture.sample_rate
    offset = stage_offset(geom, medium, fs)
    applied = offset - steering_delays(geom, phi, medium) * fs
    total = np.zeros(capture.channels.shape[1])
    for k in range(geom.mic_count):
        total += delay_samples(capture.channels[k], applied[k],
                               spec.half_width)
    total /= geom.mic_count
    edge = capture.edge + spec.half_width + math.ceil(applied.max())
    return MonoSignal(total, fs, capture.latency + offset, edge)


def end_to_end(source: MonoSignal, geom: ArrayGeometry, theta: float,
               phi: float, medium: Medium = Medium(),
               spec: InterpolatorSpec = InterpolatorSpec(),
               max_frequency: float | None = None) -> MonoSignal:
    """Propagate from `theta`, then beamform towards `phi`.

    The result carries the total pipeline latency in ``latency``. When
    `max_frequency` is given the sample rate is checked against it.
    """
    if max_frequency is not None:
        check_sample_rate(source.sample_rate, max_frequency)
    capture = propagate(source, geom, theta, medium, spec)
    return beamform(capture, phi, medium, spec)


def align_to_source(output: MonoSignal,
                    latency: float | None = None) -> MonoSignal:
    """Undo the pipeline latency so that sample n lines up with the source.

    Integer latencies are removed by slicing; a fractional remainder is
    removed with the interpolator.
    """
    latency = output.latency if latency is None else latency
    whole = math.floor(latency)
    frac = latency - whole
    samples = output.samples
    if frac:
        samples = delay_samples(samples, -frac)
    n = samples.size
    shifted = np.zeros(n)
    if whole >= 0:
        shifted[:n - whole] = samples[whole:]
    else:
        shifted[-whole:] = samples[:n + whole]
    edge = output.edge + (1 if frac else 0)
    return replace(output, samples=shifted, latency=output.latency - latency,
                   edge=edge)


def relative_rms_error(reference: MonoSignal, estimate: MonoSignal) -> float:
    """RMS of ``estimate - reference`` over the shared valid region,
    relative to the RMS of the reference there."""
    edge = max(reference.edge, estimate.edge)
    n = min(len(reference), len(estimate))
    region = slice(edge, n - edge)
    ref = reference.samples[region]
    err = estimate.samples[region] - ref
    return float(np.sqrt(np.mean(err ** 2) / np.mean(ref ** 2)))


def _projection_length(valid: int, frequency: float,
                       sample_rate: float) -> int:
    period = Fraction(sample_rate / frequency).limit_denominator(1000)
    if period.numerator <= valid:
        return (valid // period.numerator) * period.numerator
    cycles = math.floor(valid * frequency / sample_rate)
    return int(round(cycles * sample_rate / frequency)) if cycles else valid


def tone_amplitude(signal: MonoSignal, frequency: float) -> float:
    """Amplitude of the `frequency` component in the valid region.

    Single-bin Fourier projection over a whole number of cycles.
    """
    check_sample_rate(signal.sample_rate, frequency)
    region = signal.samples[signal.valid]
    length = _projection_length(region.size, frequency, signal.sample_rate)
    if length <= 0:
        raise RangeError("valid region is empty; signal too short")
    x = region[:length]
    n = np.arange(length)
    basis = np.exp(-2j * np.pi * frequency * n / signal.sample_rate)
    return float(2.0 * np.abs(np.dot(x, basis)) / length)


def tone_gain(geom: ArrayGeometry, theta: float, phi: float,
              frequency: float, medium: Medium = Medium(),
              spec: InterpolatorSpec = InterpolatorSpec(),
              sample_rate: float = 16000.0, duration: float = 0.25) -> float:
    """Measured steady-state gain of a pure tone through the simulator."""
    n = int(round(duration * sample_rate))
    t = np.arange(n) / sample_rate
    source = MonoSignal(0.5 * np.sin(2 * np.pi * frequency * t), sample_rate)
    output = end_to_end(source, geom, theta, phi, medium, spec)
    reference = replace(source, edge=output.edge)
    return tone_amplitude(output, frequency) / tone_amplitude(reference,
                                                              frequency)
