"""Signal file ingestion: the package CSV format and PCM WAV."""

from __future__ import annotations

import wave

import numpy as np

from ..errors import ParseError, UnsupportedEncoding
from ..signal_model import ClassLabel, Signal


def ingest_csv(path, source_id: str | None = None, label: ClassLabel | None = None) -> Signal:
    """Read a signal CSV: header line ``sample_rate_hz,<fs>``, one amplitude per row."""
    path = str(path)
    with open(path, newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(f"{path}: empty file")
    head = lines[0].split(",")
    if len(head) != 2 or head[0].strip() != "sample_rate_hz":
        raise ParseError(f"{path}: line 1: expected 'sample_rate_hz,<fs>' header")
    try:
        fs = float(head[1])
    except ValueError:
        raise ParseError(f"{path}: line 1: sample rate {head[1]!r} is not numeric") from None
    samples = np.empty(len(lines) - 1)
    for i, line in enumerate(lines[1:], start=2):
        try:
            samples[i - 2] = float(line)
        except ValueError:
            raise ParseError(f"{path}: line {i}: {line!r} is not numeric") from None
    try:
        return Signal(samples=samples, sample_rate_hz=fs,
                      source_id=source_id or path, label=label)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None


def write_signal_csv(path, signal: Signal) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"sample_rate_hz,{float(signal.sample_rate_hz)!r}\n")
        for v in signal.samples:
            fh.write(f"{float(v)!r}\n")


def ingest_wav(path, source_id: str | None = None, label: ClassLabel | None = None) -> Signal:
    """Read an integer-PCM WAV file; multi-channel audio is mean-mixed down.

    Samples are scaled to [-1, 1] by the full scale of the bit depth.
    Compressed or float encodings raise :class:`UnsupportedEncoding`.
    """
    path = str(path)
    try:
        with wave.open(path, "rb") as wf:
            n_channels = wf.getnchannels()
            width = wf.getsampwidth()
            fs = wf.getframerate()
            raw = wf.readframes(wf.getnframes())
    except wave.Error as exc:
        raise UnsupportedEncoding(f"{path}: {exc}") from None
    except EOFError:
        raise ParseError(f"{path}: truncated WAV header") from None
    if width == 1:
        data = np.frombuffer(raw, dtype=np.uint8).astype(np.float64)
        data = (data - 128.0) / 128.0
    elif width == 2:
        data = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    elif width == 3:
        b = np.frombuffer(raw, dtype=np.uint8).reshape(-1, 3).astype(np.uint32)
        vals = (b[:, 0] | (b[:, 1] << 8) | (b[:, 2] << 16)).astype(np.int32)
        vals -= (vals >> 23) << 24  # sign-extend 24-bit two's complement
        data = vals.astype(np.float64) / float(2**23)
    elif width == 4:
        data = np.frombuffer(raw, dtype="<i4").astype(np.float64) / float(2**31)
    else:
        raise UnsupportedEncoding(f"{path}: {8 * width}-bit PCM is not supported")
    if n_channels > 1:
        usable = (len(data) // n_channels) * n_channels
        data = data[:usable].reshape(-1, n_channels).mean(axis=1)
    if data.size == 0:
        raise ParseError(f"{path}: WAV file holds no frames")
    return Signal(samples=data, sample_rate_hz=float(fs),
                  source_id=source_id or path, label=label)
