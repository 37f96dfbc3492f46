import json
import struct
import wave

import numpy as np
import pytest

from biogate.datasets import (
    ClassEntry,
    CorpusSpec,
    DistortionRecipe,
    build_corpus,
    default_desk_spec,
    ingest_csv,
    ingest_wav,
    load_corpus,
    save_corpus,
    synth_signal,
    write_signal_csv,
)
from biogate.errors import InsufficientSourceData, ParseError, UnsupportedEncoding
from biogate.signal_model import ClassLabel, Signal

from conftest import mini_spec
from reference import dominant_period_autocorr, spectral_mass_below


class TestCsvIngestion:
    def test_round_trip(self, tmp_path):
        sig = Signal(np.random.default_rng(0).normal(size=800), 100.0)
        path = tmp_path / "sig.csv"
        write_signal_csv(path, sig)
        back = ingest_csv(path)
        assert back.sample_rate_hz == 100.0
        assert np.array_equal(back.samples, sig.samples)
        assert back.duration_s == 8.0

    def test_non_numeric_row_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("sample_rate_hz,100\n1.0\nbogus\n2.0\n")
        with pytest.raises(ParseError, match="line 3"):
            ingest_csv(path)

    def test_missing_header(self, tmp_path):
        path = tmp_path / "noheader.csv"
        path.write_text("1.0\n2.0\n")
        with pytest.raises(ParseError, match="line 1"):
            ingest_csv(path)


def write_wav(path, data, fs, sampwidth=2, channels=1):
    data = np.asarray(data)
    full_scale = float(2 ** (8 * sampwidth - 1))
    with wave.open(str(path), "wb") as wf:
        wf.setnchannels(channels)
        wf.setsampwidth(sampwidth)
        wf.setframerate(fs)
        ints = np.clip(np.round(data * full_scale), -full_scale, full_scale - 1)
        if sampwidth == 2:
            wf.writeframes(ints.astype("<i2").tobytes())
        elif sampwidth == 1:
            wf.writeframes((ints + 128).astype(np.uint8).tobytes())
        elif sampwidth == 4:
            wf.writeframes(ints.astype("<i4").tobytes())


class TestWavIngestion:
    def test_16bit_mono(self, tmp_path):
        t = np.arange(4410) / 44100.0
        x = 0.5 * np.sin(2 * np.pi * 440 * t)
        path = tmp_path / "tone.wav"
        write_wav(path, x, 44100)
        sig = ingest_wav(path)
        assert sig.sample_rate_hz == 44100.0
        assert np.max(np.abs(sig.samples)) <= 1.0
        assert np.allclose(sig.samples, x, atol=1.0 / 32768)

    def test_stereo_mixdown(self, tmp_path):
        left = np.full(100, 0.5)
        right = np.full(100, -0.5)
        interleaved = np.empty(200)
        interleaved[0::2] = left
        interleaved[1::2] = right
        path = tmp_path / "stereo.wav"
        write_wav(path, interleaved, 8000, channels=2)
        sig = ingest_wav(path)
        assert len(sig.samples) == 100
        assert np.allclose(sig.samples, 0.0, atol=1.0 / 32768)

    def test_8bit(self, tmp_path):
        x = np.linspace(-0.9, 0.9, 50)
        path = tmp_path / "eight.wav"
        write_wav(path, x, 8000, sampwidth=1)
        sig = ingest_wav(path)
        assert np.allclose(sig.samples, x, atol=2.0 / 128)

    def test_float_wav_rejected(self, tmp_path):
        # hand-rolled RIFF header with format tag 3 (IEEE float)
        path = tmp_path / "float.wav"
        data = struct.pack("<4f", 0.0, 0.5, -0.5, 1.0)
        hdr = b"RIFF" + struct.pack("<I", 36 + len(data)) + b"WAVE"
        hdr += b"fmt " + struct.pack("<IHHIIHH", 16, 3, 1, 8000, 32000, 4, 32)
        hdr += b"data" + struct.pack("<I", len(data))
        path.write_bytes(hdr + data)
        with pytest.raises(UnsupportedEncoding):
            ingest_wav(path)


class TestSynth:
    def test_ecg_periodicity(self):
        # heart period must dominate the autocorrelation in the 60-100 bpm band
        for seed in (0, 1, 2):
            sig = synth_signal(ClassLabel.ECG, 10.0, 500.0, seed)
            period = dominant_period_autocorr(sig.samples, 500.0, 0.4, 1.4)
            assert 0.55 <= period <= 1.05

    def test_bmov_mass_below_2hz(self):
        for seed in (0, 1, 2):
            sig = synth_signal(ClassLabel.B_MOV, 8.0, 250.0, seed)
            assert spectral_mass_below(sig.samples, 250.0, 2.0) >= 0.95

    def test_determinism(self):
        a = synth_signal(ClassLabel.NON_BIO, 8.0, 500.0, 42)
        b = synth_signal(ClassLabel.NON_BIO, 8.0, 500.0, 42)
        assert np.array_equal(a.samples, b.samples)

    def test_seeds_differ(self):
        a = synth_signal(ClassLabel.EEG, 8.0, 200.0, 1)
        b = synth_signal(ClassLabel.EEG, 8.0, 200.0, 2)
        assert not np.array_equal(a.samples, b.samples)

    def test_normalization(self):
        sig = synth_signal(ClassLabel.EEG, 8.0, 200.0, 3)
        assert sig.samples.mean() == pytest.approx(0.0, abs=1e-9)
        assert sig.samples.std() == pytest.approx(1.0, rel=1e-9)

    def test_audio_needs_reasonable_rate(self):
        with pytest.raises(ValueError):
            synth_signal(ClassLabel.NON_BIO, 8.0, 100.0, 0)


class TestCorpus:
    def test_desk_shape_and_split(self):
        corpus = build_corpus(default_desk_spec(master_seed=9))
        assert len(corpus.segments) == 525
        for label, count in [(ClassLabel.ECG, 200), (ClassLabel.EEG, 150),
                             (ClassLabel.B_MOV, 75), (ClassLabel.NON_BIO, 100)]:
            rows = [i for i, seg in enumerate(corpus.segments) if seg.label == label]
            assert len(rows) == count
            n_train = sum(1 for i in rows if corpus.split[i] == "train")
            assert abs(n_train - 0.7 * count) <= 1.0

    def test_single_item_classes_go_to_train(self):
        spec = CorpusSpec(
            entries=tuple(
                ClassEntry(label, 1, 250.0) for label in
                (ClassLabel.ECG, ClassLabel.EEG, ClassLabel.B_MOV, ClassLabel.NON_BIO)
            ),
            segment_s=4.0,
        )
        corpus = build_corpus(spec)
        assert len(corpus.segments) == 4
        assert corpus.split == ["train"] * 4

    def test_build_determinism(self):
        a = build_corpus(mini_spec())
        b = build_corpus(mini_spec())
        assert a.segment_ids == b.segment_ids
        assert a.split == b.split
        for s1, s2 in zip(a.segments, b.segments):
            assert np.array_equal(s1.samples, s2.samples)

    def test_seed_changes_corpus(self):
        a = build_corpus(mini_spec(master_seed=1))
        b = build_corpus(mini_spec(master_seed=2))
        assert not np.array_equal(a.segments[0].samples, b.segments[0].samples)

    def test_awgn_recipe_applied_to_fraction(self):
        spec = mini_spec()
        with_noise = build_corpus(spec)
        clean_entries = tuple(
            ClassEntry(e.label, e.count, e.sample_rate_hz) for e in spec.entries
        )
        clean = build_corpus(CorpusSpec(clean_entries, spec.segment_s,
                                        spec.split_frac, spec.master_seed))
        ecg = [i for i, seg in enumerate(clean.segments) if seg.label == ClassLabel.ECG]
        changed = sum(
            not np.array_equal(with_noise.segments[i].samples, clean.segments[i].samples)
            for i in ecg
        )
        assert 1 <= changed < len(ecg)  # a strict fraction carries the noise

    def test_save_load_round_trip(self, tmp_path):
        corpus = build_corpus(mini_spec())
        save_corpus(corpus, tmp_path / "c")
        back = load_corpus(tmp_path / "c")
        assert back.segment_ids == corpus.segment_ids
        assert back.split == corpus.split
        for s1, s2 in zip(back.segments, corpus.segments):
            assert np.array_equal(s1.samples, s2.samples)
            assert s1.label == s2.label

    def test_saved_corpora_byte_identical(self, tmp_path):
        save_corpus(build_corpus(mini_spec()), tmp_path / "a")
        save_corpus(build_corpus(mini_spec()), tmp_path / "b")
        a_files = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*") if p.is_file())
        b_files = sorted(p.relative_to(tmp_path / "b") for p in (tmp_path / "b").rglob("*") if p.is_file())
        assert a_files == b_files
        for rel in a_files:
            assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes()

    def test_ingest_source_and_parent_level_split(self, tmp_path):
        # one long parent yields 5 segments that must stay on one side
        src = tmp_path / "src"
        src.mkdir()
        rng = np.random.default_rng(0)
        write_signal_csv(src / "long.csv", Signal(rng.normal(size=2000), 100.0))
        write_signal_csv(src / "short.csv", Signal(rng.normal(size=400), 100.0))
        spec = CorpusSpec(
            entries=(
                ClassEntry(ClassLabel.ECG, 6, 100.0, source=str(src)),
                ClassEntry(ClassLabel.EEG, 2, 100.0),
            ),
            segment_s=4.0,
        )
        corpus = build_corpus(spec)
        ecg_rows = [i for i, s in enumerate(corpus.segments) if s.label == ClassLabel.ECG]
        assert len(ecg_rows) == 6
        by_parent = {}
        for i in ecg_rows:
            by_parent.setdefault(corpus.segments[i].parent_id, set()).add(corpus.split[i])
        for sides in by_parent.values():
            assert len(sides) == 1

    def test_insufficient_source_data(self, tmp_path):
        src = tmp_path / "src"
        src.mkdir()
        write_signal_csv(src / "tiny.csv", Signal(np.ones(100), 100.0))
        spec = CorpusSpec(
            entries=(
                ClassEntry(ClassLabel.ECG, 3, 100.0, source=str(src)),
                ClassEntry(ClassLabel.EEG, 2, 100.0),
            ),
            segment_s=4.0,
        )
        with pytest.raises(InsufficientSourceData):
            build_corpus(spec)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            CorpusSpec(entries=(), split_frac=1.5)
        with pytest.raises(ValueError):
            CorpusSpec(
                entries=(
                    ClassEntry(ClassLabel.ECG, 1, 100.0),
                    ClassEntry(ClassLabel.ECG, 1, 100.0),
                )
            )
        with pytest.raises(ValueError):
            DistortionRecipe("superimpose", 1.0)

    def test_spec_json_round_trip(self):
        spec = mini_spec()
        again = CorpusSpec.from_dict(json.loads(json.dumps(spec.to_dict())))
        assert again == spec
        assert again.sha256() == spec.sha256()
