import numpy as np
import pytest

from biogate.errors import SignalTooShort
from biogate.signal_model import ClassLabel, Segment, Signal, resample, segment

from reference import linear_interp_reference


def make_signal(n=2000, fs=100.0, seed=0, label=None):
    rng = np.random.default_rng(seed)
    return Signal(rng.normal(size=n), fs, source_id=f"s{seed}", label=label)


class TestSignal:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Signal(np.array([]), 100.0)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            Signal(np.array([1.0, np.nan]), 100.0)

    def test_rejects_nonpositive_rate(self):
        with pytest.raises(ValueError):
            Signal(np.ones(10), 0.0)

    def test_duration(self):
        assert make_signal(2000, 100.0).duration_s == 20.0


class TestSegmentation:
    def test_20s_at_100hz_gives_two_segments(self):
        # 20 s / 8 s windows: two segments of 800 samples, 4 s remainder dropped
        segs = segment(make_signal(2000, 100.0), 8.0)
        assert len(segs) == 2
        assert all(len(s) == 800 for s in segs)

    def test_exact_fit_single_segment(self):
        segs = segment(make_signal(4000, 500.0), 8.0)
        assert len(segs) == 1
        assert len(segs[0]) == 4000

    def test_too_short_raises(self):
        with pytest.raises(SignalTooShort):
            segment(make_signal(790, 100.0), 8.0)  # 7.9 s

    def test_offsets_contiguous_and_label_inherited(self):
        segs = segment(make_signal(2400, 100.0, label=ClassLabel.EEG), 8.0)
        assert [s.offset_s for s in segs] == [0.0, 8.0, 16.0]
        assert all(s.label == ClassLabel.EEG for s in segs)
        assert all(s.parent_id == "s0" for s in segs)

    def test_concatenation_reproduces_prefix(self):
        sig = make_signal(2500, 100.0)
        segs = segment(sig, 8.0)
        joined = np.concatenate([s.samples for s in segs])
        assert np.array_equal(joined, sig.samples[: len(joined)])

    def test_purity(self):
        sig = make_signal(1600, 100.0)
        a = segment(sig, 8.0)
        b = segment(sig, 8.0)
        assert np.array_equal(a[0].samples, b[0].samples)


class TestResample:
    def test_identity_rate_returns_same_samples(self):
        sig = make_signal(500, 100.0)
        out = resample(sig, 100.0)
        assert np.array_equal(out.samples, sig.samples)

    def test_output_length_scales(self):
        sig = make_signal(44100, 44100.0)
        out = resample(sig, 1000.0)
        assert len(out.samples) == 1000
        assert out.sample_rate_hz == 1000.0

    def test_ramp_upsampling_matches_closed_form(self):
        # linear ramp x[i] = i at 100 Hz doubled to 200 Hz: step 0.5
        sig = Signal(np.arange(100, dtype=float), 100.0)
        out = resample(sig, 200.0)
        t_in = np.arange(100) / 100.0
        expected = np.array(
            [linear_interp_reference(i / 200.0, t_in, sig.samples) for i in range(len(out.samples))]
        )
        assert np.allclose(out.samples, expected, rtol=0, atol=1e-12)
        assert np.allclose(np.diff(out.samples[:-1]), 0.5, atol=1e-12)

    def test_random_signal_matches_closed_form(self):
        sig = make_signal(257, 103.0, seed=3)
        out = resample(sig, 61.0)
        t_in = np.arange(257) / 103.0
        expected = np.array(
            [linear_interp_reference(i / 61.0, t_in, sig.samples) for i in range(len(out.samples))]
        )
        assert np.allclose(out.samples, expected, rtol=0, atol=1e-12)

    def test_metadata_preserved(self):
        sig = make_signal(500, 100.0, label=ClassLabel.ECG)
        out = resample(sig, 50.0)
        assert out.label == ClassLabel.ECG
        assert out.source_id == sig.source_id


class TestSegmentType:
    def test_inconsistent_duration_rejected(self):
        with pytest.raises(ValueError):
            Segment(np.ones(100), 100.0, duration_s=5.0)

    def test_source_id_embeds_offset(self):
        seg = Segment(np.ones(100), 100.0, duration_s=1.0, parent_id="p", offset_s=8.0)
        assert seg.source_id == "p@8s"
