from .metrics import accuracy, confusion_matrix, macro_f1, per_class_f1, write_metrics_csv
from .svg import render_line_chart
from .sweeps import (
    SweepResult,
    build_eval_segments,
    feature_matrix,
    run_distortion_sweep,
    run_timing,
    sweep_chart,
    train_models,
    write_sweep_csv,
    write_timing_csv,
)

__all__ = [
    "SweepResult",
    "accuracy",
    "build_eval_segments",
    "confusion_matrix",
    "feature_matrix",
    "macro_f1",
    "per_class_f1",
    "render_line_chart",
    "run_distortion_sweep",
    "run_timing",
    "sweep_chart",
    "train_models",
    "write_metrics_csv",
    "write_sweep_csv",
    "write_timing_csv",
]
