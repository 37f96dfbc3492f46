"""Command-line front end: corpus synthesis, ingestion, feature extraction,
training, evaluation, robustness sweeps, feature ablation, the privacy
filter, and feature importance reports.

Exit codes: 0 on success, 1 on any runtime failure (with a diagnostic on
stderr), 2 on usage errors (argparse). All outputs except the timing table
are deterministic in (inputs, seed, config).
"""

from __future__ import annotations

import argparse
import json
import os
import shutil
import sys

import numpy as np

from .datasets import (
    CorpusSpec,
    build_corpus,
    default_desk_spec,
    ingest_csv,
    ingest_wav,
    load_corpus,
    save_corpus,
    write_signal_csv,
)
from .ensembles import (
    ALGORITHMS,
    forward_feature_selection,
    importance_ordered_ablation,
    load_model,
    make_classifier,
    permutation_importance,
    save_model,
)
from .errors import BiogateError
from .evaluation import (
    build_eval_segments,
    run_distortion_sweep,
    run_timing,
    sweep_chart,
    train_models,
    write_metrics_csv,
    write_sweep_csv,
    write_timing_csv,
)
from .evaluation.svg import render_line_chart
from .features import FEATURE_NAMES, extract_features, read_feature_csv, write_feature_csv
from .privacy_filter import FilterConfig, gate_stream, write_verdict_csv
from .signal_model import CLASS_ORDER, ClassLabel, resample

DEFAULT_GRIDS = {
    "horizontal_scale": (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0),
    "vertical_scale": (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0),
    "awgn": (0.0, 0.05, 0.1, 0.2, 0.5, 1.0),
    "crop": (1.0, 2.0, 4.0, 6.0, 8.0),
    "superimpose": (0.0, 0.25, 0.5, 1.0, 2.0),
}


def _load_config(path):
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _corpus_spec_from(config: dict, seed) -> CorpusSpec:
    spec = (
        CorpusSpec.from_dict(config["corpus"])
        if "corpus" in config
        else default_desk_spec()
    )
    if seed is not None:
        d = spec.to_dict()
        d["master_seed"] = seed
        spec = CorpusSpec.from_dict(d)
    return spec


def _features_for(corpus_dir: str, features_path: str | None):
    """Load the feature CSV for a corpus, extracting and caching if absent."""
    corpus = load_corpus(corpus_dir)
    path = features_path or os.path.join(corpus_dir, "features.csv")
    if not os.path.exists(path):
        rows = [
            (sid, seg.label, extract_features(seg)) for sid, seg in corpus.rows()
        ]
        write_feature_csv(path, rows)
    ids, labels, X = read_feature_csv(path)
    split_of = dict(zip(corpus.segment_ids, corpus.split))
    split = [split_of[i] for i in ids]
    return corpus, ids, labels, X, split


def _rows_of(split, which):
    return [i for i, s in enumerate(split) if s == which]


def cmd_synth(args) -> int:
    spec = _corpus_spec_from(_load_config(args.config), args.seed)
    corpus = build_corpus(spec)
    save_corpus(corpus, args.out)
    n_train = corpus.split.count("train")
    print(f"{len(corpus.segments)} segments ({n_train} train) -> {args.out}")
    return 0


def cmd_ingest(args) -> int:
    src = args.infile
    label = ClassLabel(args.label) if args.label else None
    if src.lower().endswith(".wav"):
        sig = ingest_wav(src, label=label)
    else:
        sig = ingest_csv(src, label=label)
    if args.resample_hz:
        sig = resample(sig, args.resample_hz)
    write_signal_csv(args.out, sig)
    print(f"{len(sig.samples)} samples at {sig.sample_rate_hz:g} Hz -> {args.out}")
    return 0


def cmd_extract(args) -> int:
    corpus = load_corpus(args.corpus)
    out = args.out or os.path.join(args.corpus, "features.csv")
    rows = [(sid, seg.label, extract_features(seg)) for sid, seg in corpus.rows()]
    write_feature_csv(out, rows)
    print(f"{len(rows)} feature vectors -> {out}")
    return 0


def cmd_train(args) -> int:
    config = _load_config(args.config)
    _, ids, labels, X, split = _features_for(args.corpus, args.features)
    train_rows = _rows_of(split, "train")
    model = make_classifier(
        args.algo, seed=args.seed or 0,
        **config.get("hyperparams", {}).get(args.algo, {}),
    )
    model.fit(X[train_rows], [labels[i] for i in train_rows], feature_names=FEATURE_NAMES)
    save_model(model, args.out)
    print(f"{args.algo} on {len(train_rows)} rows -> {args.out}")
    return 0


def cmd_eval(args) -> int:
    model = load_model(args.model)
    _, ids, labels, X, split = _features_for(args.corpus, args.features)
    test_rows = _rows_of(split, "test")
    y_true = [labels[i] for i in test_rows]
    y_pred = list(model.predict(X[test_rows]))
    classes = [c for c in CLASS_ORDER if c in set(y_true)]
    write_metrics_csv(args.out, y_true, y_pred, classes)
    from .evaluation import accuracy as _acc

    print(f"accuracy {_acc(y_true, y_pred):.4f} on {len(test_rows)} test rows -> {args.out}")
    return 0


def cmd_sweep(args) -> int:
    config = _load_config(args.config)
    corpus, ids, labels, X, split = _features_for(args.corpus, args.features)
    train_rows = _rows_of(split, "train")
    seed = args.seed or 0
    models = train_models(
        X[train_rows],
        [labels[i] for i in train_rows],
        seed=seed,
        hyperparams=config.get("hyperparams"),
    )
    grid = (
        tuple(float(v) for v in args.grid.split(","))
        if args.grid
        else DEFAULT_GRIDS[args.kind]
    )
    eval_segments = build_eval_segments(corpus.spec, args.n_per_class, seed)
    result = run_distortion_sweep(models, eval_segments, args.kind, grid, seed)
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, f"sweep_{args.kind}.csv")
    write_sweep_csv(csv_path, result)
    sweep_chart(result, os.path.join(args.out, f"sweep_{args.kind}.svg"))
    if args.timing:
        test_rows = _rows_of(split, "test")
        rows = run_timing(X[train_rows], [labels[i] for i in train_rows], X[test_rows], seed=seed)
        write_timing_csv(os.path.join(args.out, "timing.csv"), rows)
    print(f"{args.kind} sweep over {len(grid)} values -> {csv_path}")
    return 0


def cmd_ablate(args) -> int:
    config = _load_config(args.config)
    _, ids, labels, X, split = _features_for(args.corpus, args.features)
    train_rows = _rows_of(split, "train")
    feature_counts = [int(v) for v in args.feature_counts.split(",")]
    samples = [int(v) for v in args.samples_per_class.split(",")]
    grid, order = importance_ordered_ablation(
        X[train_rows],
        [labels[i] for i in train_rows],
        args.algo,
        feature_counts,
        samples,
        seed=args.seed or 0,
        hyperparams=config.get("hyperparams", {}).get(args.algo),
    )
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, f"ablation_{args.algo}.csv")
    with open(csv_path, "w", newline="") as fh:
        import csv as _csv

        writer = _csv.writer(fh, lineterminator="\n")
        writer.writerow(["n_features", "samples_per_class", "accuracy"])
        for i, nf in enumerate(feature_counts):
            for j, sp in enumerate(samples):
                writer.writerow([nf, sp, repr(float(grid[i, j]))])
    series = {f"{sp}/class": [float(grid[i, j]) for i in range(len(feature_counts))]
              for j, sp in enumerate(samples)}
    render_line_chart(
        os.path.join(args.out, f"ablation_{args.algo}.svg"),
        feature_counts, series,
        title=f"Feature/sample ablation ({args.algo})",
        xlabel="features (least important first)", ylabel="accuracy",
    )
    print(f"ablation grid {grid.shape} -> {csv_path}")
    return 0


def cmd_filter(args) -> int:
    model = load_model(args.model)
    config = FilterConfig(t_star_s=args.t_star, strict_threshold=args.strict)
    names = sorted(
        f for f in os.listdir(args.indir) if f.lower().endswith((".csv", ".wav"))
    )
    signals = []
    for name in names:
        full = os.path.join(args.indir, name)
        try:
            sig = ingest_wav(full, source_id=name) if name.lower().endswith(".wav") \
                else ingest_csv(full, source_id=name)
        except BiogateError:
            # malformed files still get a (blocked) verdict downstream
            sig = _Malformed(name)
        signals.append(sig)
    verdicts, passed = gate_stream(signals, model, config)
    os.makedirs(args.out, exist_ok=True)
    passed_dir = os.path.join(args.out, "passed")
    os.makedirs(passed_dir, exist_ok=True)
    for sig in passed:
        shutil.copyfile(
            os.path.join(args.indir, sig.source_id),
            os.path.join(passed_dir, sig.source_id),
        )
    write_verdict_csv(os.path.join(args.out, "verdicts.csv"), verdicts)
    print(f"{len(passed)}/{len(verdicts)} passed -> {passed_dir}")
    return 0


class _Malformed:
    """Stand-in for an unparseable file so the gate can log a blocked verdict."""

    def __init__(self, source_id):
        self.source_id = source_id
        self.samples = np.array([])
        self.sample_rate_hz = 0.0


def cmd_importance(args) -> int:
    model = load_model(args.model)
    names = list(model.feature_names_ or FEATURE_NAMES)
    rows = [[n, repr(float(v))] for n, v in zip(names, model.feature_importances_)]
    header = ["feature", "gain_importance"]
    if args.features:
        ids, labels, X = read_feature_csv(args.features)
        perm = permutation_importance(model, X, labels, n_repeats=args.repeats,
                                      seed=args.seed or 0)
        header.append("permutation_importance")
        for row, v in zip(rows, perm):
            row.append(repr(float(v)))
    if args.forward and args.features:
        ids, labels, X = read_feature_csv(args.features)
        order, trace = forward_feature_selection(X, labels, model.algorithm,
                                                 seed=args.seed or 0)
        header.append("forward_selection_rank")
        rank = {f: k for k, f in enumerate(order)}
        for f, row in enumerate(rows):
            row.append(str(rank[f]))
    import csv as _csv

    with open(args.out, "w", newline="") as fh:
        writer = _csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"importance table -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biogate",
        description="Biometric-leak prevention: features, classifiers, fail-closed filter.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None, help="master seed")
        p.add_argument("--config", default=None, help="JSON config file")

    p = sub.add_parser("synth", help="build a synthetic corpus")
    common(p)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("ingest", help="convert one CSV/WAV file to a signal CSV")
    common(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--label", choices=[c.value for c in CLASS_ORDER], default=None)
    p.add_argument("--resample-hz", type=float, default=None)
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("extract", help="feature CSV for a corpus")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_extract)

    p = sub.add_parser("train", help="train one classifier on the train split")
    common(p)
    p.add_argument("--algo", choices=sorted(ALGORITHMS), required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--features", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("eval", help="test-split metrics for a trained model")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--features", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("sweep", help="distortion-robustness sweep for all algorithms")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--features", default=None)
    p.add_argument("--kind", choices=sorted(DEFAULT_GRIDS), required=True)
    p.add_argument("--grid", default=None, help="comma-separated values")
    p.add_argument("--n-per-class", type=int, default=50)
    p.add_argument("--timing", action="store_true", help="also write timing.csv")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("ablate", help="feature-count x sample-count accuracy grid")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--features", default=None)
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="rf")
    p.add_argument("--feature-counts", default="1,2,4,6,8,10,12")
    p.add_argument("--samples-per-class", default="50,100,200,350")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_ablate)

    p = sub.add_parser("filter", help="gate a directory of signals, fail closed")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="indir", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--t-star", type=float, default=8.0)
    p.add_argument("--strict", type=float, default=None,
                   help="block NON_BIO below this probability")
    p.set_defaults(fn=cmd_filter)

    p = sub.add_parser("importance", help="feature-importance report for a model")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--features", default=None,
                   help="feature CSV enabling permutation importance")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--forward", action="store_true",
                   help="also run forward feature selection")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_importance)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (BiogateError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"biogate {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
