"""Core time-series types: labeled signals, fixed-duration segments, resampling.

All operations are pure: they never mutate their inputs and the same input
always yields the same output, so signals and segments can be processed in
parallel without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import SignalTooShort


class ClassLabel(str, Enum):
    """The four signal categories. NON_BIO is the only pass-through class."""

    ECG = "ECG"
    EEG = "EEG"
    B_MOV = "B_MOV"
    NON_BIO = "NON_BIO"

    def __str__(self) -> str:
        return self.value


#: Frozen class order shared by classifiers and the privacy filter.
#: Biometric classes come first so that probability ties resolve fail-closed.
CLASS_ORDER = (ClassLabel.ECG, ClassLabel.EEG, ClassLabel.B_MOV, ClassLabel.NON_BIO)


def _as_amplitudes(samples) -> np.ndarray:
    arr = np.asarray(samples, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("samples must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError("samples must be finite (no NaN/Inf)")
    return arr


@dataclass(frozen=True)
class Signal:
    """A sample-rate-annotated 1-D amplitude series."""

    samples: np.ndarray
    sample_rate_hz: float
    source_id: str = ""
    label: ClassLabel | None = None

    def __post_init__(self):
        object.__setattr__(self, "samples", _as_amplitudes(self.samples))
        if not (self.sample_rate_hz > 0):
            raise ValueError("sample_rate_hz must be > 0")

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate_hz

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class Segment:
    """A contiguous window cut from a parent signal."""

    samples: np.ndarray
    sample_rate_hz: float
    duration_s: float
    parent_id: str = ""
    offset_s: float = 0.0
    label: ClassLabel | None = None

    def __post_init__(self):
        object.__setattr__(self, "samples", _as_amplitudes(self.samples))
        if not (self.sample_rate_hz > 0):
            raise ValueError("sample_rate_hz must be > 0")
        # duration must describe the payload to within one sample
        if abs(self.duration_s * self.sample_rate_hz - len(self.samples)) > 1.0:
            raise ValueError("duration_s inconsistent with sample count")

    @property
    def source_id(self) -> str:
        return f"{self.parent_id}@{self.offset_s:g}s"

    def __len__(self) -> int:
        return len(self.samples)


def segment(signal: Signal, window_s: float) -> list[Segment]:
    """Cut a signal into non-overlapping, contiguous windows of ``window_s``.

    The trailing remainder shorter than one window is discarded (padding
    would distort entropy features). Raises :class:`SignalTooShort` when the
    signal does not cover even one window.
    """
    if not (window_s > 0):
        raise ValueError("window_s must be > 0")
    if signal.duration_s < window_s:
        raise SignalTooShort(
            f"signal lasts {signal.duration_s:.3f}s, below the {window_s:g}s window"
        )
    win_n = int(round(window_s * signal.sample_rate_hz))
    n_segments = len(signal.samples) // win_n
    out = []
    for k in range(n_segments):
        chunk = signal.samples[k * win_n : (k + 1) * win_n]
        out.append(
            Segment(
                samples=chunk.copy(),
                sample_rate_hz=signal.sample_rate_hz,
                duration_s=win_n / signal.sample_rate_hz,
                parent_id=signal.source_id,
                offset_s=k * win_n / signal.sample_rate_hz,
                label=signal.label,
            )
        )
    return out


def resample(signal: Signal, target_hz: float) -> Signal:
    """Linear-interpolation resampling to ``target_hz``.

    Output length is ``round(n * target_hz / source_hz)``. Output times past
    the last input sample hold the final value (flat extrapolation of at most
    one sample). Resampling to the signal's own rate returns the samples
    unchanged. Linear interpolation is a documented fidelity limit: it is not
    band-limited reconstruction.
    """
    if not (target_hz > 0):
        raise ValueError("target_hz must be > 0")
    if target_hz == signal.sample_rate_hz:
        return Signal(
            samples=signal.samples.copy(),
            sample_rate_hz=signal.sample_rate_hz,
            source_id=signal.source_id,
            label=signal.label,
        )
    n_out = int(round(len(signal.samples) * target_hz / signal.sample_rate_hz))
    if n_out < 1:
        n_out = 1
    t_out = np.arange(n_out) / target_hz
    t_in = np.arange(len(signal.samples)) / signal.sample_rate_hz
    resampled = np.interp(t_out, t_in, signal.samples)
    return Signal(
        samples=resampled,
        sample_rate_hz=target_hz,
        source_id=signal.source_id,
        label=signal.label,
    )
