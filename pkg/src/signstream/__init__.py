"""Streaming sign-language interpretation engine.

Landmark frames go through a sliding window into a recurrent sequence
classifier; per-frame predictions are stabilized by a frequency counter,
segmented by an idle timer, and the collected keywords are rendered into
sentences. A newline-delimited JSON wire protocol, deterministic replay,
and a WebSocket server wrap the pipeline for interactive use.
"""

from .dtw import DtwOptions, benchmark, dtw_distance, knn_classify
from .landmarks import (
    DEFAULT_LABELS,
    Dataset,
    DatasetFormatError,
    FrameError,
    GestureSample,
    LandmarkFrame,
    SlidingWindow,
    Vocabulary,
    WindowNotFullError,
    load_dataset,
    save_dataset,
    split_dataset,
)
from .lstm import (
    LstmClassifier,
    TrainConfig,
    TrainingDivergedError,
    gradient_check,
    load_model,
    train,
)
from .segmentation import KeywordEvent, SegmentationConfig, Segmenter
from .sentences import (
    EmptyKeywordsError,
    SentenceTable,
    TableConflictError,
    TableFormatError,
    TableGenerator,
    bundled_table,
    canonical_key,
    generate,
    load_sentence_table,
)
from .session import Session, SessionConfig
from .synth import SynthSpec, generate_dataset, generate_frames

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_LABELS",
    "Dataset",
    "DatasetFormatError",
    "DtwOptions",
    "EmptyKeywordsError",
    "FrameError",
    "GestureSample",
    "KeywordEvent",
    "LandmarkFrame",
    "LstmClassifier",
    "SegmentationConfig",
    "Segmenter",
    "SentenceTable",
    "Session",
    "SessionConfig",
    "SlidingWindow",
    "SynthSpec",
    "TableConflictError",
    "TableFormatError",
    "TableGenerator",
    "TrainConfig",
    "TrainingDivergedError",
    "Vocabulary",
    "WindowNotFullError",
    "benchmark",
    "bundled_table",
    "canonical_key",
    "dtw_distance",
    "generate",
    "generate_dataset",
    "generate_frames",
    "gradient_check",
    "knn_classify",
    "load_dataset",
    "load_model",
    "load_sentence_table",
    "save_dataset",
    "split_dataset",
    "train",
]
