"""Credible intervals of the relative difference in means across
heterogeneous two-group studies: Monte Carlo posterior sampling, the
delta_L effect-strength score, sign-specific threshold hypothesis tests,
study ranking, and contra plot rendering, with two bundled atherosclerosis
datasets."""

from .datasets import (
    BUNDLED,
    CsvError,
    Dataset,
    DatasetNotFoundError,
    RowError,
    StudyRecord,
    bundled_dataset,
    parse_csv,
    serialize_csv,
    validate_dataset,
)
from .intervals import (
    CredibleInterval,
    Direction,
    ScoredStudy,
    TestOutcome,
    ThresholdSpec,
    credible_interval,
    nearest_rank_quantile,
    posterior_median,
    rank_entries,
    score_delta_l,
    test_meaningful,
)
from .pipeline import (
    AnalysisResult,
    ContraEntry,
    SignView,
    analyze_dataset,
    result_payload,
    threshold_test,
)
from .posterior import (
    DegenerateDrawsError,
    GroupSummary,
    PosteriorDraws,
    ValidationError,
    derive_study_seed,
    draw_means_given_variances,
    draw_relative_dm,
    draw_variances,
)
from .render import PlotOptions, render_contra_plot, render_supplement_table

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BUNDLED",
    "AnalysisResult",
    "ContraEntry",
    "CredibleInterval",
    "CsvError",
    "Dataset",
    "DatasetNotFoundError",
    "DegenerateDrawsError",
    "Direction",
    "GroupSummary",
    "PlotOptions",
    "PosteriorDraws",
    "RowError",
    "ScoredStudy",
    "SignView",
    "StudyRecord",
    "TestOutcome",
    "ThresholdSpec",
    "ValidationError",
    "analyze_dataset",
    "bundled_dataset",
    "credible_interval",
    "derive_study_seed",
    "draw_means_given_variances",
    "draw_relative_dm",
    "draw_variances",
    "nearest_rank_quantile",
    "parse_csv",
    "posterior_median",
    "rank_entries",
    "render_contra_plot",
    "render_supplement_table",
    "result_payload",
    "score_delta_l",
    "serialize_csv",
    "test_meaningful",
    "threshold_test",
    "validate_dataset",
]
