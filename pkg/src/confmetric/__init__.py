"""Sparse confidence-based metric learning with ranking supervision."""

from .dataset import Dataset
from .data_io import DatasetSchema, SynthConfig, load_csv, save_csv, split, synth_generate
from .errors import (
    ConfmetricError,
    DegenerateClassError,
    DegenerateScoreWarning,
    DimensionMismatchError,
    MissingSupervisionError,
    NumericalFailureError,
    SchemaMismatchError,
    UndefinedMetricError,
    ValidationError,
)
from .experiment import (
    ExperimentConfig,
    ResultRecord,
    positive_scores,
    run_experiment,
    summarize,
    write_results_csv,
    write_summary_csv,
)
from .evaluate import (
    EvalReport,
    FeatureWeightStats,
    auroc,
    feature_weight_stats,
    heatmap_matrix,
    n_zero_rows,
    report,
    row_rank,
    sparsity,
)
from .metric import (
    Prediction,
    class_similarity,
    class_similarity_query,
    confidence_score,
    kernel_matrix,
    kernel_similarity,
    predict,
    similarity_scores,
    squared_distance,
)
from .model_io import ModelFile, load_model, save_model, schema_fingerprint
from .objective import (
    LossBreakdown,
    ObjectiveConfig,
    RankingPairs,
    build_ranking_pairs,
    camel_cl_loss,
    camel_loss,
    margin,
    smooth_gradient,
)
from .optimize import (
    BacktrackingStep,
    FixedStep,
    ScaledIdentityInit,
    SeededGaussianInit,
    TrainConfig,
    TrainTrace,
    fit,
    init_metric,
    soft_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "Dataset", "DatasetSchema", "SynthConfig", "load_csv", "save_csv",
    "split", "synth_generate",
    "ConfmetricError", "DegenerateClassError", "DegenerateScoreWarning",
    "DimensionMismatchError", "MissingSupervisionError",
    "NumericalFailureError", "SchemaMismatchError", "UndefinedMetricError",
    "ValidationError",
    "ExperimentConfig", "ResultRecord", "positive_scores", "run_experiment",
    "summarize", "write_results_csv", "write_summary_csv",
    "EvalReport", "FeatureWeightStats", "auroc", "feature_weight_stats",
    "heatmap_matrix", "n_zero_rows", "report", "row_rank", "sparsity",
    "Prediction", "class_similarity", "class_similarity_query",
    "confidence_score", "kernel_matrix", "kernel_similarity", "predict",
    "similarity_scores", "squared_distance",
    "ModelFile", "load_model", "save_model", "schema_fingerprint",
    "LossBreakdown", "ObjectiveConfig", "RankingPairs",
    "build_ranking_pairs", "camel_cl_loss", "camel_loss", "margin",
    "smooth_gradient",
    "BacktrackingStep", "FixedStep", "ScaledIdentityInit",
    "SeededGaussianInit", "TrainConfig", "TrainTrace", "fit", "init_metric",
    "soft_threshold",
]
