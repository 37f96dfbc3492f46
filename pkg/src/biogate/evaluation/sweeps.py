"""Distortion-robustness sweeps, ablation grids, and the timing table.

Every sweep cell derives its RNG seed from (master seed, cell indices), so
cells are independent of execution order and a parallel runner would produce
byte-identical results.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field

import numpy as np

from ..datasets import synth_signal
from ..distortion import DistortionSpec, apply_distortion
from ..features import FEATURE_NAMES, extract_features
from ..signal_model import CLASS_ORDER, ClassLabel, Segment, resample, segment
from ..ensembles import make_classifier
from .metrics import accuracy, macro_f1


def _child_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(tuple(int(p) for p in parts)).generate_state(1)[0])


@dataclass(frozen=True)
class SweepResult:
    axis: str
    grid: tuple[float, ...]
    accuracy: dict = field(default_factory=dict)  # algorithm -> series
    f1: dict = field(default_factory=dict)
    n_eval_per_class: int = 0
    master_seed: int = 0

    def __post_init__(self):
        for series in list(self.accuracy.values()) + list(self.f1.values()):
            if len(series) != len(self.grid):
                raise ValueError("series length must match grid length")
            if any(not (0 <= v <= 1) for v in series):
                raise ValueError("metrics must lie in [0, 1]")


def build_eval_segments(corpus_spec, n_per_class: int, seed: int) -> list[Segment]:
    """Fresh held-out evaluation segments, one batch per synth class.

    Seeds are disjoint from the corpus generator stream (different branch
    tag), mirroring evaluation on recordings the models never saw.
    """
    out: list[Segment] = []
    for li, entry in enumerate(corpus_spec.entries):
        if entry.source != "synth":
            raise ValueError("fresh evaluation sets exist only for synth classes")
        for i in range(n_per_class):
            sig = synth_signal(
                entry.label,
                corpus_spec.segment_s,
                entry.sample_rate_hz,
                _child_seed(seed, 101, li, i),
            )
            out.extend(segment(sig, corpus_spec.segment_s))
    return out


def feature_matrix(segments) -> tuple[np.ndarray, list]:
    X = np.vstack([extract_features(seg).values for seg in segments])
    labels = [seg.label for seg in segments]
    return X, labels


def train_models(X, y, algorithms=("rf", "gbt_exact", "gbt_hist"), seed: int = 0,
                 hyperparams: dict | None = None) -> dict:
    """One fitted model per algorithm id, all trained on the same matrix."""
    hyperparams = hyperparams or {}
    models = {}
    for algo in algorithms:
        model = make_classifier(algo, seed=seed, **hyperparams.get(algo, {}))
        model.fit(X, y, feature_names=FEATURE_NAMES)
        models[algo] = model
    return models


def _carrier_for(seg: Segment, seed: int) -> Segment:
    carrier_rate = max(seg.sample_rate_hz, 1000.0)
    sig = synth_signal(ClassLabel.NON_BIO, seg.duration_s + 0.5, carrier_rate, seed)
    if carrier_rate != seg.sample_rate_hz:
        sig = resample(sig, seg.sample_rate_hz)
    return Segment(
        samples=sig.samples,
        sample_rate_hz=seg.sample_rate_hz,
        duration_s=len(sig.samples) / seg.sample_rate_hz,
        parent_id=sig.source_id,
        label=ClassLabel.NON_BIO,
    )


def run_distortion_sweep(
    models: dict,
    eval_segments: list[Segment],
    kind: str,
    grid,
    seed: int = 0,
) -> SweepResult:
    """Distort the evaluation set at every grid value and score all models.

    AWGN grid values are relative to each segment's standard deviation (the
    sweep axis stays meaningful across classes of different amplitude).
    """
    if len(models) == 0:
        raise ValueError("need at least one trained model")
    labels = [seg.label for seg in eval_segments]
    classes = [c for c in CLASS_ORDER if c in set(labels)]
    per_class = min(labels.count(c) for c in classes) if classes else 0
    grid = tuple(float(g) for g in grid)
    acc: dict = {name: [] for name in models}
    f1s: dict = {name: [] for name in models}
    for gi, value in enumerate(grid):
        rows = []
        for i, seg in enumerate(eval_segments):
            dspec = DistortionSpec(
                kind=kind,
                amount=value,
                seed=_child_seed(seed, gi, i),
                relative_sigma=(kind == "awgn"),
            )
            carrier = None
            if kind == "superimpose":
                carrier = _carrier_for(seg, _child_seed(seed, 9991, i))
            distorted = apply_distortion(seg, dspec, carrier)
            rows.append(extract_features(distorted).values)
        X = np.vstack(rows)
        for name, model in models.items():
            pred = list(model.predict(X))
            acc[name].append(accuracy(labels, pred))
            f1s[name].append(macro_f1(labels, pred, classes))
    return SweepResult(
        axis=kind,
        grid=grid,
        accuracy={k: tuple(v) for k, v in acc.items()},
        f1={k: tuple(v) for k, v in f1s.items()},
        n_eval_per_class=per_class,
        master_seed=seed,
    )


def write_sweep_csv(path, result: SweepResult) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["axis", "value", "algorithm", "accuracy", "macro_f1",
             "n_eval_per_class", "master_seed"]
        )
        for gi, value in enumerate(result.grid):
            for name in sorted(result.accuracy):
                writer.writerow(
                    [
                        result.axis,
                        repr(value),
                        name,
                        repr(result.accuracy[name][gi]),
                        repr(result.f1[name][gi]),
                        result.n_eval_per_class,
                        result.master_seed,
                    ]
                )


def sweep_chart(result: SweepResult, path) -> None:
    from .svg import render_line_chart

    series = {}
    for name in sorted(result.accuracy):
        series[f"{name} acc"] = list(result.accuracy[name])
        series[f"{name} F1"] = list(result.f1[name])
    render_line_chart(
        path,
        list(result.grid),
        series,
        title=f"Robustness to {result.axis}",
        xlabel=result.axis,
        ylabel="metric",
    )


def run_timing(X_train, y_train, X_test, algorithms=("rf", "gbt_exact", "gbt_hist"),
               seed: int = 0) -> list[dict]:
    """Wall-clock train/predict times per algorithm (informational)."""
    rows = []
    for algo in algorithms:
        model = make_classifier(algo, seed=seed)
        t0 = time.perf_counter()
        model.fit(X_train, y_train, feature_names=FEATURE_NAMES)
        t1 = time.perf_counter()
        if len(X_test):
            model.predict(X_test)
        t2 = time.perf_counter()
        rows.append(
            {
                "algorithm": algo,
                "train_s": t1 - t0,
                "test_s": t2 - t1,
                "n_train": len(X_train),
                "n_test": len(X_test),
            }
        )
    return rows


def write_timing_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["algorithm", "train_s", "test_s", "n_train", "n_test"])
        for r in rows:
            writer.writerow(
                [r["algorithm"], f"{r['train_s']:.6f}", f"{r['test_s']:.6f}",
                 r["n_train"], r["n_test"]]
            )
