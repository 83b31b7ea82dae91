"""Handwritten vs printed word separation from statistical texture features.

Pipeline: segment a scanned page into word images, describe each word with
nine intensity-histogram and local-filter features, and classify it with a
k-nearest-neighbor vote. Evaluation runs K-fold cross-validation with pooled
confusion counts.
"""

from .classifier import (
    KnnModel,
    Label,
    Neighbor,
    Standardizer,
    fit_standardizer,
    knn_fit,
    knn_predict,
    standardize,
)
from .corpus import (
    CorpusImage,
    LabeledSample,
    SynthesisParams,
    extract_dataset,
    features_from_csv,
    features_to_csv,
    group_from_path,
    ingest_directory,
    load_model,
    save_model,
    synthesize_page,
    synthesize_word,
)
from .errors import ConfigError, DataError
from .evaluation import (
    ConfusionMatrix,
    CvReport,
    FoldAssignment,
    confusion_matrix,
    cross_validate,
    format_report,
    kfold_partition,
    write_report_csv,
)
from .features import (
    FeatureVector,
    FilterKind,
    GlobalFeatures,
    central_moment,
    extract_features,
    global_features,
    local_entropy,
    local_filter,
    local_range,
    local_std,
    normalized_histogram,
)
from .image_io import load_gray, save_gray
from .imaging import (
    Box,
    Component,
    StructuringElement,
    binarize,
    connected_components,
    crop,
    dilate,
    erode,
    histogram,
    label_map,
    opening,
    otsu_threshold,
)
from .segmentation import (
    SegmentationConfig,
    WordRegion,
    load_config,
    remove_long_lines,
    remove_small_components,
    save_config,
    segment_words,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "Component",
    "ConfigError",
    "ConfusionMatrix",
    "CorpusImage",
    "CvReport",
    "DataError",
    "FeatureVector",
    "FilterKind",
    "FoldAssignment",
    "GlobalFeatures",
    "KnnModel",
    "Label",
    "LabeledSample",
    "Neighbor",
    "SegmentationConfig",
    "Standardizer",
    "StructuringElement",
    "SynthesisParams",
    "WordRegion",
    "binarize",
    "central_moment",
    "confusion_matrix",
    "connected_components",
    "crop",
    "cross_validate",
    "dilate",
    "erode",
    "extract_dataset",
    "extract_features",
    "features_from_csv",
    "features_to_csv",
    "fit_standardizer",
    "format_report",
    "global_features",
    "group_from_path",
    "histogram",
    "ingest_directory",
    "kfold_partition",
    "knn_fit",
    "knn_predict",
    "label_map",
    "load_config",
    "load_gray",
    "load_model",
    "local_entropy",
    "local_filter",
    "local_range",
    "local_std",
    "normalized_histogram",
    "opening",
    "otsu_threshold",
    "remove_long_lines",
    "remove_small_components",
    "save_config",
    "save_gray",
    "save_model",
    "segment_words",
    "standardize",
    "synthesize_page",
    "synthesize_word",
    "write_report_csv",
]
