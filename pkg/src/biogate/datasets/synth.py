"""Seeded synthetic generators for the four signal classes.

Desk-scale stand-ins for the public corpora: each generator mimics the gross
spectral/temporal character of its class well enough for the classification
protocol to be meaningful, while staying cheap and fully reproducible. Every
signal is normalized to zero mean and unit standard deviation.
"""

from __future__ import annotations

import numpy as np

from ..signal_model import ClassLabel, Signal


def _normalized(x: np.ndarray) -> np.ndarray:
    x = x - x.mean()
    sd = x.std()
    return x / sd if sd > 0 else x


def _lowpass(x: np.ndarray, fs: float, cutoff_hz: float) -> np.ndarray:
    spec = np.fft.rfft(x)
    freqs = np.fft.rfftfreq(len(x), d=1.0 / fs)
    spec[freqs >= cutoff_hz] = 0.0
    return np.fft.irfft(spec, n=len(x))


def _synth_ecg(t: np.ndarray, fs: float, rng) -> np.ndarray:
    """Gaussian-pulse QRS train at a seeded 60-100 bpm rate plus slow wander."""
    bpm = rng.uniform(60.0, 100.0)
    period = 60.0 / bpm
    width = rng.uniform(0.018, 0.03)
    phase = rng.uniform(0.0, period)
    x = np.zeros_like(t)
    beat = phase
    while beat < t[-1] + 4 * width:
        x += np.exp(-0.5 * ((t - beat) / width) ** 2)
        beat += period
    x += 0.12 * np.sin(2 * np.pi * 0.2 * t + rng.uniform(0, 2 * np.pi))
    x += 0.02 * rng.normal(size=t.shape)
    return x


def _synth_eeg(t: np.ndarray, fs: float, rng) -> np.ndarray:
    """1/f background with seeded 8-12 Hz alpha bursts."""
    n = len(t)
    white = rng.normal(size=n)
    spec = np.fft.rfft(white)
    freqs = np.fft.rfftfreq(n, d=1.0 / fs)
    shaping = 1.0 / np.sqrt(np.maximum(freqs, 0.5))
    shaping[0] = 0.0
    background = np.fft.irfft(spec * shaping, n=n)
    background /= max(background.std(), 1e-12)
    alpha_hz = rng.uniform(8.0, 12.0)
    x = background.copy()
    for _ in range(int(rng.integers(2, 5))):
        center = rng.uniform(0.1, 0.9) * t[-1]
        burst_len = rng.uniform(0.5, 1.5)
        envelope = np.exp(-0.5 * ((t - center) / (burst_len / 2)) ** 2)
        x += 0.8 * envelope * np.sin(2 * np.pi * alpha_hz * t + rng.uniform(0, 2 * np.pi))
    return x


def _synth_bmov(t: np.ndarray, fs: float, rng) -> np.ndarray:
    """Postural sway: twice-integrated low-pass (< 1 Hz) Gaussian noise."""
    noise = _lowpass(rng.normal(size=len(t)), fs, 1.0)
    once = np.cumsum(noise) / fs
    twice = np.cumsum(once - once.mean()) / fs
    return twice


def _synth_audio(t: np.ndarray, fs: float, rng) -> np.ndarray:
    """Harmonic stack (seeded fundamental, up to 6 partials) with envelope and clicks.

    Partials at or above 0.45 * fs are dropped to keep the synthesis alias
    free; the nominal fundamental range 100-400 Hz therefore needs a sample
    rate of at least 250 Hz and is clipped below ~890 Hz.
    """
    if fs < 250:
        raise ValueError("audio synthesis needs a sample rate of at least 250 Hz")
    f0 = rng.uniform(100.0, min(400.0, 0.45 * fs - 1.0))
    n_partials = int(rng.integers(3, 7))
    x = np.zeros_like(t)
    for k in range(1, n_partials + 1):
        fk = k * f0
        if fk >= 0.45 * fs:
            break
        x += (1.0 / k) * np.sin(2 * np.pi * fk * t + rng.uniform(0, 2 * np.pi))
    envelope_hz = rng.uniform(0.3, 2.0)
    envelope = 0.55 + 0.45 * np.sin(2 * np.pi * envelope_hz * t + rng.uniform(0, 2 * np.pi))
    x *= envelope
    for _ in range(int(rng.integers(2, 6))):
        pos = int(rng.uniform(0.05, 0.95) * len(t))
        click_len = max(3, int(0.004 * fs))
        stop = min(len(t), pos + click_len)
        x[pos:stop] += rng.uniform(1.5, 3.0) * np.exp(-np.arange(stop - pos) / (0.25 * click_len))
    x += 0.01 * rng.normal(size=t.shape)
    return x


_GENERATORS = {
    ClassLabel.ECG: _synth_ecg,
    ClassLabel.EEG: _synth_eeg,
    ClassLabel.B_MOV: _synth_bmov,
    ClassLabel.NON_BIO: _synth_audio,
}


def synth_signal(label: ClassLabel, duration_s: float, sample_rate_hz: float, seed: int) -> Signal:
    """Deterministic synthetic signal of one class; same seed, same bytes."""
    if not (duration_s > 0 and sample_rate_hz > 0):
        raise ValueError("duration and sample rate must be > 0")
    label = ClassLabel(label)
    rng = np.random.default_rng(seed)
    n = int(round(duration_s * sample_rate_hz))
    t = np.arange(n) / sample_rate_hz
    samples = _normalized(_GENERATORS[label](t, sample_rate_hz, rng))
    return Signal(
        samples=samples,
        sample_rate_hz=sample_rate_hz,
        source_id=f"synth-{label.value.lower()}-{seed}",
        label=label,
    )
