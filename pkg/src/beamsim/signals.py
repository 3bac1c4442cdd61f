"""Deterministic test signals."""

from __future__ import annotations

import numpy as np

from .simulator import MonoSignal


def tone(frequency: float, duration: float, sample_rate: float = 16000.0,
         amplitude: float = 0.5, phase: float = 0.0) -> MonoSignal:
    t = np.arange(int(round(duration * sample_rate))) / sample_rate
    return MonoSignal(amplitude * np.sin(2 * np.pi * frequency * t + phase),
                      sample_rate)


def white_noise(duration: float, sample_rate: float = 16000.0,
                rms: float = 0.1, seed: int = 0) -> MonoSignal:
    rng = np.random.default_rng(seed)
    n = int(round(duration * sample_rate))
    return MonoSignal(rms * rng.standard_normal(n), sample_rate)


def synthetic_speech(duration: float = 3.0, sample_rate: float = 16000.0,
                     f0: float = 150.0, peak: float = 0.5) -> MonoSignal:
    """Voiced-speech stand-in covering the 0-4 kHz band.

    Harmonics of a gliding pitch (``f0`` +/- 20 %, 0.7 Hz intonation) with a
    1/h amplitude envelope and 4 Hz syllabic amplitude modulation. Harmonics
    fade out with a raised-cosine taper between 4.0 and 4.6 kHz, so the
    signal is band-limited well below Nyquist at 16 kHz. The glide sweeps
    the harmonics across every frequency bin, which a fixed-pitch stack of
    harmonics would leave empty.
    """
    n = int(round(duration * sample_rate))
    t = np.arange(n) / sample_rate
    pitch = f0 * (1.0 + 0.2 * np.sin(2 * np.pi * 0.7 * t))
    phase = 2 * np.pi * np.cumsum(pitch) / sample_rate
    fade_lo, fade_hi = 4000.0, 4600.0
    x = np.zeros(n)
    h = 1
    while h * f0 * 0.8 < fade_hi:
        inst = h * pitch
        taper = np.clip((fade_hi - inst) / (fade_hi - fade_lo), 0.0, 1.0)
        taper = 0.5 - 0.5 * np.cos(np.pi * taper)
        # quadratic phase offsets keep the crest factor moderate
        x += taper / h * np.sin(h * phase + 0.3 * h * h)
        h += 1
    x *= 0.6 + 0.4 * np.sin(2 * np.pi * 4.0 * t)
    x *= peak / np.max(np.abs(x))
    return MonoSignal(x, sample_rate)
