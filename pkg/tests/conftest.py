import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the reference module

from biogate.datasets import ClassEntry, CorpusSpec, DistortionRecipe, build_corpus, default_desk_spec
from biogate.evaluation import accuracy, feature_matrix, train_models
from biogate.features import FEATURE_NAMES, extract_features
from biogate.signal_model import ClassLabel


def mini_spec(master_seed: int = 11, counts=(8, 6, 5, 6)) -> CorpusSpec:
    """A tiny, fast corpus for wiring tests: 4-second segments, low rates."""
    ecg, eeg, bmov, audio = counts
    return CorpusSpec(
        entries=(
            ClassEntry(ClassLabel.ECG, ecg, 100.0,
                       distortions=(DistortionRecipe("awgn", 0.05, 0.5, relative_sigma=True),)),
            ClassEntry(ClassLabel.EEG, eeg, 100.0),
            ClassEntry(ClassLabel.B_MOV, bmov, 100.0),
            ClassEntry(ClassLabel.NON_BIO, audio, 250.0),
        ),
        segment_s=4.0,
        split_frac=0.7,
        master_seed=master_seed,
    )


@pytest.fixture(scope="session")
def mini_corpus():
    return build_corpus(mini_spec())


@pytest.fixture(scope="session")
def mini_trained(mini_corpus):
    """Features plus small-forest models for the mini corpus."""
    X, labels = feature_matrix(mini_corpus.segments)
    train_rows = [i for i, s in enumerate(mini_corpus.split) if s == "train"]
    test_rows = [i for i, s in enumerate(mini_corpus.split) if s == "test"]
    hp = {
        "rf": {"n_trees": 30},
        "gbt_exact": {"n_trees": 30},
        "gbt_hist": {"n_trees": 30},
    }
    models = train_models(
        X[train_rows], [labels[i] for i in train_rows], seed=5, hyperparams=hp
    )
    return {
        "corpus": mini_corpus,
        "X": X,
        "labels": labels,
        "train_rows": train_rows,
        "test_rows": test_rows,
        "models": models,
    }


class DeskPipeline:
    """The full desk-scale protocol, run once per session and timed."""

    def __init__(self):
        self.timings = {}
        t0 = time.perf_counter()
        self.corpus = build_corpus(default_desk_spec(master_seed=424242))
        self.timings["build_corpus"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        self.X, self.labels = feature_matrix(self.corpus.segments)
        self.timings["extract"] = time.perf_counter() - t0

        self.train_rows = [i for i, s in enumerate(self.corpus.split) if s == "train"]
        self.test_rows = [i for i, s in enumerate(self.corpus.split) if s == "test"]
        self.y_train = [self.labels[i] for i in self.train_rows]
        self.y_test = [self.labels[i] for i in self.test_rows]

        self.models = {}
        self.test_accuracy = {}
        for algo in ("rf", "gbt_exact", "gbt_hist"):
            t0 = time.perf_counter()
            models = train_models(self.X[self.train_rows], self.y_train,
                                  algorithms=(algo,), seed=777)
            self.timings[f"train_{algo}"] = time.perf_counter() - t0
            self.models[algo] = models[algo]
            t0 = time.perf_counter()
            pred = list(models[algo].predict(self.X[self.test_rows]))
            self.timings[f"predict_{algo}"] = time.perf_counter() - t0
            self.test_accuracy[algo] = accuracy(self.y_test, pred)

    @property
    def total_seconds(self) -> float:
        return sum(self.timings.values())


@pytest.fixture(scope="session")
def desk():
    return DeskPipeline()


@pytest.fixture(scope="session")
def desk_eval_segments(desk):
    """Fresh 50-per-class held-out evaluation set for the sweep criteria."""
    from biogate.evaluation import build_eval_segments

    return build_eval_segments(desk.corpus.spec, n_per_class=50, seed=20240817)
