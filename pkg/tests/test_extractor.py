from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from biogate.datasets import synth_signal
from biogate.errors import FeatureNotFinite
from biogate.features import (
    FEATURE_NAMES,
    FeatureExtractor,
    FeatureVector,
    extract_features,
    read_feature_csv,
    write_feature_csv,
)
from biogate.signal_model import ClassLabel, Segment, segment


def seg(samples, fs):
    return Segment(np.asarray(samples, float), fs, duration_s=len(samples) / fs)


class TestContract:
    def test_names_frozen(self):
        assert FEATURE_NAMES[0] == "fuzzyen_m1"
        assert FEATURE_NAMES[9] == "fuzzyen_m10"
        assert FEATURE_NAMES[10:] == ("psd_mean", "psd_std")
        assert len(FEATURE_NAMES) == 12

    def test_constant_segment(self):
        vec = extract_features(seg(np.full(800, 7.0), 100.0))
        assert np.all(vec.values[:10] == 0.0)
        assert vec.values[11] == 0.0  # psd_std

    def test_vector_validation(self):
        with pytest.raises(ValueError):
            FeatureVector(np.zeros(5))
        with pytest.raises(FeatureNotFinite):
            FeatureVector(np.full(12, np.nan))

    def test_repeatable(self):
        x = np.random.default_rng(0).normal(size=800)
        a = extract_features(seg(x, 100.0)).values
        b = extract_features(seg(x.copy(), 100.0)).values
        assert np.array_equal(a, b)

    def test_thread_pool_matches_serial(self):
        rng = np.random.default_rng(1)
        segments = [seg(rng.normal(size=400), 100.0) for _ in range(8)]
        serial = [extract_features(s).values for s in segments]
        with ThreadPoolExecutor(max_workers=4) as pool:
            threaded = list(pool.map(lambda s: extract_features(s).values, segments))
        for a, b in zip(serial, threaded):
            assert np.array_equal(a, b)


class TestClassContrast:
    def test_ecg_vs_audio_differ_in_psd_mean(self):
        ecg = segment(synth_signal(ClassLabel.ECG, 8.0, 100.0, seed=3), 8.0)[0]
        audio = segment(synth_signal(ClassLabel.NON_BIO, 8.0, 500.0, seed=3), 8.0)[0]
        v_ecg = extract_features(ecg).values
        v_audio = extract_features(audio).values
        i = FEATURE_NAMES.index("psd_mean")
        ratio = max(v_ecg[i], v_audio[i]) / min(v_ecg[i], v_audio[i])
        assert ratio > 2.0


class TestTransformer:
    def test_sklearn_surface(self):
        rng = np.random.default_rng(2)
        segments = [seg(rng.normal(size=400), 100.0) for _ in range(3)]
        tr = FeatureExtractor().fit(segments)
        X = tr.transform(segments)
        assert X.shape == (3, 12)
        assert list(tr.get_feature_names_out()) == list(FEATURE_NAMES)
        assert tr.get_params()["config"] is not None


class TestCsvRoundTrip:
    def test_round_trip_and_ordering(self, tmp_path):
        rng = np.random.default_rng(5)
        rows = []
        for i in (2, 0, 1):  # scrambled on purpose; writer must sort
            v = extract_features(seg(rng.normal(size=400), 100.0))
            rows.append((f"id_{i}", ClassLabel.EEG, v))
        path = tmp_path / "features.csv"
        write_feature_csv(path, rows)
        ids, labels, X = read_feature_csv(path)
        assert ids == ["id_0", "id_1", "id_2"]
        assert labels == [ClassLabel.EEG] * 3
        by_id = {rid: vec.values for rid, _, vec in rows}
        for rid, x in zip(ids, X):
            assert np.array_equal(x, by_id[rid])  # repr round-trip is exact
