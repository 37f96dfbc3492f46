from .corpus import (
    ClassEntry,
    Corpus,
    CorpusSpec,
    DistortionRecipe,
    build_corpus,
    default_desk_spec,
    load_corpus,
    save_corpus,
)
from .io import ingest_csv, ingest_wav, write_signal_csv
from .synth import synth_signal

__all__ = [
    "ClassEntry",
    "Corpus",
    "CorpusSpec",
    "DistortionRecipe",
    "build_corpus",
    "default_desk_spec",
    "ingest_csv",
    "ingest_wav",
    "load_corpus",
    "save_corpus",
    "synth_signal",
    "write_signal_csv",
]
