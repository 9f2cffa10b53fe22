"""
Experiment harness: error metrics against the FV references, YAML experiment
configuration, the end-to-end runs with their CSV/JSON/Markdown artifacts, and
the `hyperlab` command line.
"""

from .artifacts import (
    read_report_json,
    render_report_markdown,
    serialize_error_series_csv,
    serialize_report_json,
    serialize_sweep_csv,
)
from .config import (
    DEFAULT_PROFILE,
    PROFILES,
    load_experiment_config,
    load_experiment_document,
    load_experiment_source,
    parse_override,
    resolve_experiment_config,
)
from .contracts import (
    ConfigError,
    EntropyVerdict,
    ErrorSeries,
    ExperimentConfig,
    ExperimentReport,
    FvSettings,
    GridMismatchError,
    HarnessError,
    LengthMismatchError,
    SweepResult,
    SweepRow,
    TimeNotRecordedError,
    TrainingSettings,
)
from .metrics import comparison_abscissae, error_vs_reference, require_same_grid, sample_for_comparison
from .module import ARTIFACT_NAMES, rerun_from_report, run_experiment, run_experiment_config, run_sweep

__all__ = [
    "ARTIFACT_NAMES",
    "ConfigError",
    "DEFAULT_PROFILE",
    "EntropyVerdict",
    "ErrorSeries",
    "ExperimentConfig",
    "ExperimentReport",
    "FvSettings",
    "GridMismatchError",
    "HarnessError",
    "LengthMismatchError",
    "PROFILES",
    "SweepResult",
    "SweepRow",
    "TimeNotRecordedError",
    "TrainingSettings",
    "comparison_abscissae",
    "error_vs_reference",
    "load_experiment_config",
    "load_experiment_document",
    "load_experiment_source",
    "parse_override",
    "read_report_json",
    "render_report_markdown",
    "require_same_grid",
    "rerun_from_report",
    "resolve_experiment_config",
    "run_experiment",
    "run_experiment_config",
    "run_sweep",
    "sample_for_comparison",
    "serialize_error_series_csv",
    "serialize_report_json",
    "serialize_sweep_csv",
]
