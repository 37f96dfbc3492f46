"""Corpus assembly: synthetic or ingested signals, segmented, split 70/30.

A corpus is fully determined by its spec and master seed. Splitting happens
at parent-signal granularity so segments of one recording never straddle the
train/test boundary.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field

import numpy as np

from ..distortion import DistortionSpec, apply_distortion
from ..errors import CorruptModel, InsufficientSourceData
from ..signal_model import CLASS_ORDER, ClassLabel, Segment, Signal, resample, segment
from .io import ingest_csv, ingest_wav, write_signal_csv
from .synth import synth_signal

CORPUS_FORMAT = "biogate.corpus"
CORPUS_VERSION = 1


def _child_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(tuple(int(p) for p in parts)).generate_state(1)[0])


@dataclass(frozen=True)
class DistortionRecipe:
    """A distortion applied to a seeded fraction of one class's segments."""

    kind: str
    amount: float
    fraction: float = 1.0
    relative_sigma: bool = False

    def __post_init__(self):
        if not (0 < self.fraction <= 1):
            raise ValueError("fraction must be in (0, 1]")
        if self.kind == "superimpose":
            raise ValueError("superimpose is a sweep-time distortion, not a corpus recipe")


@dataclass(frozen=True)
class ClassEntry:
    label: ClassLabel
    count: int
    sample_rate_hz: float
    source: str = "synth"  # "synth" or a directory of CSV/WAV files
    distortions: tuple[DistortionRecipe, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "label", ClassLabel(self.label))
        object.__setattr__(
            self,
            "distortions",
            tuple(d if isinstance(d, DistortionRecipe) else DistortionRecipe(**d)
                  for d in self.distortions),
        )
        if self.count <= 0:
            raise ValueError("count must be > 0")
        if not (self.sample_rate_hz > 0):
            raise ValueError("sample_rate_hz must be > 0")


@dataclass(frozen=True)
class CorpusSpec:
    entries: tuple[ClassEntry, ...]
    segment_s: float = 8.0
    split_frac: float = 0.7
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(
            self,
            "entries",
            tuple(e if isinstance(e, ClassEntry) else ClassEntry(**e) for e in self.entries),
        )
        if not (0 < self.split_frac < 1):
            raise ValueError("split_frac must be in (0, 1)")
        if not (self.segment_s > 0):
            raise ValueError("segment_s must be > 0")
        labels = [e.label for e in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("each class may appear at most once")

    def to_dict(self) -> dict:
        d = asdict(self)
        for entry in d["entries"]:
            entry["label"] = str(entry["label"])
            entry["distortions"] = list(entry["distortions"])
        d["entries"] = list(d["entries"])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CorpusSpec":
        return cls(
            entries=tuple(ClassEntry(**e) for e in d["entries"]),
            segment_s=d.get("segment_s", 8.0),
            split_frac=d.get("split_frac", 0.7),
            master_seed=d.get("master_seed", 0),
        )

    def sha256(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


@dataclass
class Corpus:
    spec: CorpusSpec
    segments: list[Segment]
    segment_ids: list[str]
    split: list[str]  # "train" / "test", parallel to segments
    provenance: dict = field(default_factory=dict)

    def rows(self, which: str | None = None):
        """(id, segment) pairs, optionally restricted to one split."""
        for sid, seg, spl in zip(self.segment_ids, self.segments, self.split):
            if which is None or spl == which:
                yield sid, seg

    def labels(self, which: str | None = None) -> list[ClassLabel]:
        return [seg.label for _, seg in self.rows(which)]


def _ingest_directory(path: str, entry: ClassEntry, window_s: float) -> list[Segment]:
    files = sorted(
        f for f in os.listdir(path) if f.lower().endswith((".csv", ".wav"))
    )
    segments: list[Segment] = []
    for name in files:
        full = os.path.join(path, name)
        if name.lower().endswith(".wav"):
            sig = ingest_wav(full, source_id=name, label=entry.label)
        else:
            sig = ingest_csv(full, source_id=name, label=entry.label)
        if sig.sample_rate_hz != entry.sample_rate_hz:
            sig = resample(sig, entry.sample_rate_hz)
        if sig.duration_s < window_s:
            continue
        segments.extend(segment(sig, window_s))
        if len(segments) >= entry.count:
            break
    if len(segments) < entry.count:
        raise InsufficientSourceData(
            f"{path}: {len(segments)} usable segments, spec wants {entry.count}"
        )
    return segments[: entry.count]


def build_corpus(spec: CorpusSpec) -> Corpus:
    """Generate/ingest, segment, distort, and split according to the spec."""
    all_segments: list[Segment] = []
    all_ids: list[str] = []
    splits: list[str] = []
    for li, entry in enumerate(spec.entries):
        if entry.source == "synth":
            class_segments = []
            for i in range(entry.count):
                sig = synth_signal(
                    entry.label,
                    spec.segment_s,
                    entry.sample_rate_hz,
                    _child_seed(spec.master_seed, 1, li, i),
                )
                class_segments.extend(segment(sig, spec.segment_s))
        else:
            class_segments = _ingest_directory(entry.source, entry, spec.segment_s)

        for ri, recipe in enumerate(entry.distortions):
            for i, seg in enumerate(class_segments):
                pick = np.random.default_rng(
                    _child_seed(spec.master_seed, 2, li, i, ri)
                ).uniform()
                if pick < recipe.fraction:
                    dspec = DistortionSpec(
                        kind=recipe.kind,
                        amount=recipe.amount,
                        seed=_child_seed(spec.master_seed, 3, li, i, ri),
                        relative_sigma=recipe.relative_sigma,
                    )
                    class_segments[i] = apply_distortion(seg, dspec)

        # parent-granular split: walk a seeded permutation of parents and
        # fill the train quota before spilling into test
        parents: list[str] = []
        by_parent: dict[str, list[int]] = {}
        for i, seg in enumerate(class_segments):
            if seg.parent_id not in by_parent:
                parents.append(seg.parent_id)
                by_parent[seg.parent_id] = []
            by_parent[seg.parent_id].append(i)
        rng = np.random.default_rng(_child_seed(spec.master_seed, 4, li))
        order = rng.permutation(len(parents))
        total = len(class_segments)
        target = max(1, int(np.floor(total * spec.split_frac + 0.5)))
        assignment = ["test"] * total
        placed = 0
        for p in order:
            if placed >= target:
                break
            for i in by_parent[parents[p]]:
                assignment[i] = "train"
                placed += 1

        for i, seg in enumerate(class_segments):
            all_segments.append(seg)
            all_ids.append(f"{entry.label.value}_{i:05d}")
            splits.append(assignment[i])

    return Corpus(
        spec=spec,
        segments=all_segments,
        segment_ids=all_ids,
        split=splits,
        provenance={
            "master_seed": spec.master_seed,
            "spec_sha256": spec.sha256(),
        },
    )


def save_corpus(corpus: Corpus, out_dir) -> None:
    """Write segment CSVs under <label>/<id>.csv plus a manifest.json."""
    out_dir = str(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    manifest_rows = []
    for sid, seg, spl in zip(corpus.segment_ids, corpus.segments, corpus.split):
        label_dir = os.path.join(out_dir, seg.label.value)
        os.makedirs(label_dir, exist_ok=True)
        rel = os.path.join(seg.label.value, f"{sid}.csv")
        write_signal_csv(
            os.path.join(out_dir, rel),
            Signal(seg.samples, seg.sample_rate_hz, source_id=sid, label=seg.label),
        )
        manifest_rows.append(
            {
                "id": sid,
                "label": seg.label.value,
                "file": rel,
                "parent_id": seg.parent_id,
                "offset_s": seg.offset_s,
                "split": spl,
            }
        )
    manifest = {
        "format": CORPUS_FORMAT,
        "version": CORPUS_VERSION,
        "spec": corpus.spec.to_dict(),
        "provenance": corpus.provenance,
        "segments": manifest_rows,
    }
    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_corpus(path) -> Corpus:
    path = str(path)
    manifest_path = os.path.join(path, "manifest.json")
    try:
        with open(manifest_path) as fh:
            manifest = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptModel(f"{manifest_path}: {exc}") from None
    if manifest.get("format") != CORPUS_FORMAT:
        raise CorruptModel(f"{manifest_path}: not a corpus manifest")
    spec = CorpusSpec.from_dict(manifest["spec"])
    segments, ids, splits = [], [], []
    for row in manifest["segments"]:
        label = ClassLabel(row["label"])
        sig = ingest_csv(os.path.join(path, row["file"]), source_id=row["id"], label=label)
        segments.append(
            Segment(
                samples=sig.samples,
                sample_rate_hz=sig.sample_rate_hz,
                duration_s=len(sig.samples) / sig.sample_rate_hz,
                parent_id=row["parent_id"],
                offset_s=row["offset_s"],
                label=label,
            )
        )
        ids.append(row["id"])
        splits.append(row["split"])
    return Corpus(
        spec=spec,
        segments=segments,
        segment_ids=ids,
        split=splits,
        provenance=manifest.get("provenance", {}),
    )


def default_desk_spec(master_seed: int = 0) -> CorpusSpec:
    """The desk-scale corpus: paper-shaped counts divided by ten.

    Half of the ECG segments carry AWGN at 0.05 of their standard deviation,
    mirroring the composition where half the ECG sources are noise-augmented
    copies. Body-sway and audio rates are reduced from their source-dataset
    values (1000 Hz) to keep the quadratic entropy kernel affordable on a
    single desktop core; rates stay heterogeneous across classes on purpose.
    """
    return CorpusSpec(
        entries=(
            ClassEntry(
                label=ClassLabel.ECG,
                count=200,
                sample_rate_hz=100.0,
                distortions=(DistortionRecipe("awgn", 0.05, fraction=0.5, relative_sigma=True),),
            ),
            ClassEntry(label=ClassLabel.EEG, count=150, sample_rate_hz=200.0),
            ClassEntry(label=ClassLabel.B_MOV, count=75, sample_rate_hz=250.0),
            ClassEntry(label=ClassLabel.NON_BIO, count=100, sample_rate_hz=500.0),
        ),
        segment_s=8.0,
        split_frac=0.7,
        master_seed=master_seed,
    )
