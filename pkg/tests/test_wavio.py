import numpy as np
import pytest
from scipy.io import wavfile

from beamsim.exceptions import FormatError
from beamsim.geometry import ArrayGeometry
from beamsim.signals import synthetic_speech
from beamsim.simulator import MonoSignal, propagate
from beamsim.wavio import read_wav, write_capture_wav, write_wav


def test_float_round_trip(tmp_path):
    sig = synthetic_speech(0.2)
    write_wav(tmp_path / "a.wav", sig)
    back = read_wav(tmp_path / "a.wav", 16000)
    assert back.sample_rate == 16000
    np.testing.assert_allclose(back.samples, sig.samples, atol=1e-7)


def test_pcm16_round_trip(tmp_path):
    sig = synthetic_speech(0.2)
    write_wav(tmp_path / "a.wav", sig, "int16")
    rate, raw = wavfile.read(tmp_path / "a.wav")
    assert raw.dtype == np.int16
    np.testing.assert_allclose(read_wav(tmp_path / "a.wav").samples,
                               sig.samples, atol=1 / 32768)


def test_pcm16_clips():
    from beamsim.wavio import _encode
    assert _encode(np.array([2.0, -2.0]), "int16").tolist() == [32767, -32768]


def test_rejects_stereo(tmp_path):
    wavfile.write(tmp_path / "s.wav", 16000, np.zeros((10, 2), np.int16))
    with pytest.raises(FormatError, match="mono"):
        read_wav(tmp_path / "s.wav")


def test_rejects_wrong_rate(tmp_path):
    wavfile.write(tmp_path / "r.wav", 8000, np.zeros(10, np.int16))
    with pytest.raises(FormatError, match="no resampling"):
        read_wav(tmp_path / "r.wav", 16000)


def test_rejects_empty(tmp_path):
    wavfile.write(tmp_path / "e.wav", 16000, np.zeros(0, np.int16))
    with pytest.raises(FormatError, match="no samples"):
        read_wav(tmp_path / "e.wav")


def test_rejects_int32_and_garbage(tmp_path):
    wavfile.write(tmp_path / "i.wav", 16000, np.zeros(10, np.int32))
    with pytest.raises(FormatError, match="unsupported"):
        read_wav(tmp_path / "i.wav")
    (tmp_path / "g.wav").write_bytes(b"not a wav file at all")
    with pytest.raises(FormatError):
        read_wav(tmp_path / "g.wav")


def test_capture_wav(tmp_path):
    geom = ArrayGeometry.circular_from_spacing(8, 0.06)
    cap = propagate(MonoSignal(np.random.default_rng(0).normal(size=500) * .1,
                               16000.0), geom, 0.5)
    write_capture_wav(tmp_path / "c.wav", cap)
    rate, raw = wavfile.read(tmp_path / "c.wav")
    assert raw.shape == (500, 8) and rate == 16000
    np.testing.assert_allclose(raw.T, cap.channels, atol=1e-7)
