"""Welch power spectral density estimation.

Hann-windowed, overlapping periodograms averaged into a one-sided density
(amplitude^2 per Hz). The window-power normalization ``sum(w^2)`` makes the
integral of the density over frequency approximate the signal variance for
zero-mean input. Each window is mean-removed before windowing: otherwise a
DC offset would leak through the Hann taper into the first bins and a
constant signal would not have the all-zero spectrum it deserves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import WindowLongerThanSegment


@dataclass(frozen=True)
class PsdEstimate:
    """One-sided power spectral density on a uniform frequency grid."""

    frequencies_hz: np.ndarray
    power: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.frequencies_hz, dtype=np.float64)
        p = np.asarray(self.power, dtype=np.float64)
        if f.shape != p.shape or f.ndim != 1:
            raise ValueError("frequency and power grids must be 1-D and equal length")
        if np.any(np.diff(f) <= 0) or f[0] != 0.0:
            raise ValueError("frequencies must increase strictly from 0")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ValueError("power must be finite and non-negative")
        object.__setattr__(self, "frequencies_hz", f)
        object.__setattr__(self, "power", p)

    def integral(self) -> float:
        """Total power: sum of density ordinates times the bin width."""
        df = self.frequencies_hz[1] - self.frequencies_hz[0]
        return float(self.power.sum() * df)


def _hann_periodic(n: int) -> np.ndarray:
    return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


def welch_psd(segment, window_s: float = 1.0, overlap_frac: float = 0.5) -> PsdEstimate:
    """Welch PSD of a segment (or of anything with samples and a rate).

    ``window_s`` is the periodogram window length in seconds and must cover
    at least 8 samples; ``overlap_frac`` is the fractional overlap between
    consecutive windows, in [0, 1).
    """
    x = np.asarray(getattr(segment, "samples", segment), dtype=np.float64)
    fs = float(getattr(segment, "sample_rate_hz", 0.0)) or 1.0
    if not (0 <= overlap_frac < 1):
        raise ValueError("overlap_frac must be in [0, 1)")
    nperseg = int(round(window_s * fs))
    if nperseg < 8:
        raise ValueError(f"window of {window_s:g}s covers {nperseg} samples, need >= 8")
    if nperseg > x.shape[0]:
        raise WindowLongerThanSegment(
            f"window {nperseg} samples, segment only {x.shape[0]}"
        )
    step = max(1, int(round(nperseg * (1.0 - overlap_frac))))
    window = _hann_periodic(nperseg)
    scale = 1.0 / (fs * float(np.sum(window * window)))
    n_windows = 1 + (x.shape[0] - nperseg) // step
    accum = np.zeros(nperseg // 2 + 1)
    for k in range(n_windows):
        chunk = x[k * step : k * step + nperseg]
        spectrum = np.fft.rfft(window * (chunk - chunk.mean()))
        accum += (spectrum.real**2 + spectrum.imag**2) * scale
    accum /= n_windows
    # one-sided: double everything except DC and (for even windows) Nyquist
    accum[1:] *= 2.0
    if nperseg % 2 == 0:
        accum[-1] /= 2.0
    freqs = np.fft.rfftfreq(nperseg, d=1.0 / fs)
    return PsdEstimate(frequencies_hz=freqs, power=accum)


def psd_summary(psd: PsdEstimate) -> tuple[float, float]:
    """Mean and standard deviation of the density, excluding the DC bin.

    The DC ordinate reflects sensor offset rather than signal structure, so
    the two statistical features are taken over strictly positive
    frequencies.
    """
    body = psd.power[1:]
    return float(body.mean()), float(body.std())
