"""Independent reference implementations used as test oracles.

These stay deliberately naive and share no code with the package kernels:
explicit embedding matrices, row-by-row Chebyshev distances, scalar
interpolation. Numerical care: the self-match is masked out before summing
(subtracting 1.0 afterwards would cancel catastrophically when the remaining
memberships are tiny).
"""

import math

import numpy as np


def fuzzy_entropy_reference(x, m, r, n=2.0):
    """Direct double-loop fuzzy entropy at one embedding dimension.

    Both phi terms average over the same N - m windows (the dimension-m
    index set), each window baseline-subtracted, with exponential membership
    exp(-(d/r)^n) of the pairwise Chebyshev distance.
    """
    x = np.asarray(x, dtype=np.float64)
    N = len(x)
    assert N >= m + 2, "need at least m + 2 samples"
    phis = []
    for dim in (m, m + 1):
        count = N - m
        emb = np.array([x[i : i + dim] for i in range(count)])
        emb = emb - emb.mean(axis=1, keepdims=True)
        total = 0.0
        for i in range(count):
            d = np.abs(emb - emb[i]).max(axis=1)
            memb = np.exp(-((d / r) ** n))
            memb[i] = 0.0
            total += memb.sum() / (count - 1)
        phis.append(total / count)
    return math.log(phis[0]) - math.log(phis[1])


def linear_interp_reference(t, times, values):
    """Scalar closed-form linear interpolation with flat extrapolation."""
    if t <= times[0]:
        return values[0]
    if t >= times[-1]:
        return values[-1]
    j = np.searchsorted(times, t) - 1
    frac = (t - times[j]) / (times[j + 1] - times[j])
    return values[j] + frac * (values[j + 1] - values[j])


def dominant_period_autocorr(x, fs, lo_s, hi_s):
    """Lag (seconds) of the autocorrelation peak inside [lo_s, hi_s]."""
    x = np.asarray(x, dtype=np.float64)
    x = x - x.mean()
    ac = np.correlate(x, x, mode="full")[len(x) - 1 :]
    lo = int(round(lo_s * fs))
    hi = min(int(round(hi_s * fs)), len(ac) - 1)
    return (lo + int(np.argmax(ac[lo : hi + 1]))) / fs


def spectral_mass_below(x, fs, cutoff_hz):
    """Fraction of FFT power at frequencies below the cutoff (DC excluded)."""
    x = np.asarray(x, dtype=np.float64)
    x = x - x.mean()
    power = np.abs(np.fft.rfft(x)) ** 2
    freqs = np.fft.rfftfreq(len(x), d=1.0 / fs)
    total = power[1:].sum()
    return float(power[1:][freqs[1:] < cutoff_hz].sum() / total) if total > 0 else 1.0


def fft_peak_frequency(x, fs):
    """Frequency of the largest non-DC FFT magnitude."""
    x = np.asarray(x, dtype=np.float64)
    mag = np.abs(np.fft.rfft(x - x.mean()))
    freqs = np.fft.rfftfreq(len(x), d=1.0 / fs)
    return float(freqs[1:][np.argmax(mag[1:])])
