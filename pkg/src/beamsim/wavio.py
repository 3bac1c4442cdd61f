"""Mono / multichannel WAV reading and writing.

Supported sample formats: 16-bit PCM and 32-bit IEEE float, little-endian.
No resampling is ever performed.
"""

from __future__ import annotations

import warnings
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from .exceptions import FormatError
from .simulator import MonoSignal, MultichannelCapture

PCM16_SCALE = 32768.0


def read_wav(path, expected_rate: float | None = None) -> MonoSignal:
    """Read a mono WAV file into a MonoSignal scaled to [-1, 1)."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", wavfile.WavFileWarning)
            rate, data = wavfile.read(path)
    except FileNotFoundError:
        raise
    except (ValueError, EOFError) as exc:
        raise FormatError(f"{path}: not a readable WAV file ({exc})") from exc
    if data.ndim != 1:
        raise FormatError(f"{path}: expected mono, got {data.shape[1]} "
                          "channels")
    if data.dtype == np.int16:
        samples = data.astype(float) / PCM16_SCALE
    elif data.dtype == np.float32:
        samples = data.astype(float)
    else:
        raise FormatError(f"{path}: unsupported sample format {data.dtype}; "
                          "use 16-bit PCM or 32-bit float")
    if samples.size == 0:
        raise FormatError(f"{path}: file contains no samples")
    if expected_rate is not None and rate != expected_rate:
        raise FormatError(f"{path}: sample rate {rate} Hz, expected "
                          f"{expected_rate:g} Hz (no resampling)")
    if not np.all(np.isfinite(samples)):
        raise FormatError(f"{path}: non-finite samples")
    return MonoSignal(samples, float(rate))


def _encode(samples: np.ndarray, sample_format: str) -> np.ndarray:
    if sample_format == "float32":
        return samples.astype(np.float32)
    if sample_format == "int16":
        scaled = np.round(samples * PCM16_SCALE)
        return np.clip(scaled, -32768, 32767).astype(np.int16)
    raise FormatError(f"unsupported sample format {sample_format!r}")


def _check_rate(rate: float) -> int:
    if rate != int(rate):
        raise FormatError(f"WAV needs an integer sample rate, got {rate}")
    return int(rate)


def write_wav(path, signal: MonoSignal, sample_format: str = "float32"):
    wavfile.write(Path(path), _check_rate(signal.sample_rate),
                  _encode(signal.samples, sample_format))


def write_capture_wav(path, capture: MultichannelCapture,
                      sample_format: str = "float32"):
    """Write an N-channel WAV, channel order k = 1..N."""
    wavfile.write(Path(path), _check_rate(capture.sample_rate),
                  _encode(capture.channels.T, sample_format))
