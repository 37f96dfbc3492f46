"""Seeded, reproducible signal distortions for robustness evaluation.

Five transforms: horizontal (time-axis) scaling, vertical (amplitude)
scaling, additive white Gaussian noise, random cropping, and superimposition
onto a carrier. Each one at its identity parameter (alpha=1, sigma=0,
T=duration, gain=0) returns a bit-identical copy, and every randomized
transform is a pure function of (input, parameters, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import CarrierTooShort, CropLongerThanSignal, OutputTooShort
from .signal_model import Segment

DISTORTION_KINDS = ("horizontal_scale", "vertical_scale", "awgn", "crop", "superimpose")


@dataclass(frozen=True)
class DistortionSpec:
    """One distortion with its parameter and RNG seed.

    ``amount`` is the kind's single scalar knob: the scaling factor alpha,
    the noise sigma (absolute, or relative to segment std when
    ``relative_sigma`` is set), the crop length in seconds, or the carrier
    gain.
    """

    kind: str
    amount: float
    seed: int = 0
    relative_sigma: bool = False
    carrier_id: str = ""

    def __post_init__(self):
        if self.kind not in DISTORTION_KINDS:
            raise ValueError(f"unknown distortion kind {self.kind!r}")
        if self.kind in ("horizontal_scale", "vertical_scale") and not (self.amount > 0):
            raise ValueError("scaling factor must be > 0")
        if self.kind in ("awgn", "superimpose") and self.amount < 0:
            raise ValueError("sigma and gain must be >= 0")
        if self.kind == "crop" and not (self.amount > 0):
            raise ValueError("crop duration must be > 0")


def _copy_of(segment: Segment) -> Segment:
    return replace(segment, samples=segment.samples.copy())


def horizontal_scale(segment: Segment, alpha: float) -> Segment:
    """Time-compress (alpha > 1) or stretch (alpha < 1) by resampling.

    Output sample i is the linear interpolation of the input at time
    ``i * alpha / fs``; the sample rate is preserved, so the duration becomes
    ``duration / alpha``. Content compressed past the Nyquist frequency
    aliases, as it would in any naive resampler.
    """
    if not (alpha > 0):
        raise ValueError("alpha must be > 0")
    if alpha == 1.0:
        return _copy_of(segment)
    n_in = len(segment.samples)
    n_out = int(round(n_in / alpha))
    if n_out < 1:
        raise OutputTooShort(f"scaling by {alpha:g} leaves no samples")
    positions = np.arange(n_out) * alpha
    scaled = np.interp(positions, np.arange(n_in), segment.samples)
    return Segment(
        samples=scaled,
        sample_rate_hz=segment.sample_rate_hz,
        duration_s=n_out / segment.sample_rate_hz,
        parent_id=segment.parent_id,
        offset_s=segment.offset_s,
        label=segment.label,
    )


def vertical_scale(segment: Segment, alpha: float) -> Segment:
    """Multiply every sample by alpha; length and rate unchanged."""
    if not (alpha > 0):
        raise ValueError("alpha must be > 0")
    if alpha == 1.0:
        return _copy_of(segment)
    return replace(segment, samples=segment.samples * alpha)


def add_awgn(segment: Segment, sigma: float, seed: int) -> Segment:
    """Add i.i.d. Gaussian noise N(0, sigma) from a seeded generator."""
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0.0:
        return _copy_of(segment)
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, sigma, size=len(segment.samples))
    return replace(segment, samples=segment.samples + noise)


def random_crop(segment: Segment, t_s: float, seed: int) -> Segment:
    """Contiguous slice of duration ``t_s`` starting at a seeded random time.

    The start is a continuous uniform draw over (0, duration - t_s),
    quantized to a sample index. ``t_s`` equal to the full duration forces
    the start to zero and returns the whole segment.
    """
    if not (t_s > 0):
        raise ValueError("crop duration must be > 0")
    if t_s > segment.duration_s:
        raise CropLongerThanSignal(
            f"crop of {t_s:g}s exceeds the {segment.duration_s:g}s segment"
        )
    n_out = int(round(t_s * segment.sample_rate_hz))
    n_in = len(segment.samples)
    if n_out >= n_in:
        return _copy_of(segment)
    rng = np.random.default_rng(seed)
    start_time = rng.uniform(0.0, segment.duration_s - t_s)
    start = int(round(start_time * segment.sample_rate_hz))
    start = min(start, n_in - n_out)
    return Segment(
        samples=segment.samples[start : start + n_out].copy(),
        sample_rate_hz=segment.sample_rate_hz,
        duration_s=n_out / segment.sample_rate_hz,
        parent_id=segment.parent_id,
        offset_s=segment.offset_s + start / segment.sample_rate_hz,
        label=segment.label,
    )


def superimpose(segment: Segment, carrier: Segment, gain: float) -> Segment:
    """Add ``gain * carrier`` on top of the segment, sample by sample.

    The carrier must already be at the segment's rate and at least as long;
    it is consumed from its start.
    """
    if gain < 0:
        raise ValueError("gain must be >= 0")
    if gain == 0.0:
        return _copy_of(segment)
    if carrier.sample_rate_hz != segment.sample_rate_hz:
        raise ValueError(
            "carrier rate differs from segment rate; resample the carrier first"
        )
    n = len(segment.samples)
    if len(carrier.samples) < n:
        raise CarrierTooShort(f"carrier has {len(carrier.samples)} samples, need {n}")
    return replace(segment, samples=segment.samples + gain * carrier.samples[:n])


def apply_distortion(segment: Segment, spec: DistortionSpec, carrier: Segment | None = None) -> Segment:
    """Dispatch one DistortionSpec; AWGN sigma may be std-relative."""
    if spec.kind == "horizontal_scale":
        return horizontal_scale(segment, spec.amount)
    if spec.kind == "vertical_scale":
        return vertical_scale(segment, spec.amount)
    if spec.kind == "awgn":
        sigma = spec.amount
        if spec.relative_sigma:
            sigma *= float(np.std(segment.samples))
        return add_awgn(segment, sigma, spec.seed)
    if spec.kind == "crop":
        return random_crop(segment, spec.amount, spec.seed)
    if spec.kind == "superimpose":
        if carrier is None:
            raise ValueError("superimpose needs a carrier segment")
        return superimpose(segment, carrier, spec.amount)
    raise ValueError(f"unknown distortion kind {spec.kind!r}")
