"""Landmark frames, sliding windows, and labeled gesture datasets.

A landmark frame is one flattened feature vector of alternating x/y
coordinates (two values per tracked body point). Frames accumulate in a
fixed-capacity FIFO window whose matrix view (oldest row first) is the
input consumed by the sequence classifiers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

DEFAULT_LANDMARK_COUNT = 129          # tracked points per frame
DEFAULT_FEATURE_DIM = 2 * DEFAULT_LANDMARK_COUNT
DEFAULT_WINDOW_CAPACITY = 30

DEFAULT_LABELS = (
    "not_signing",
    "blood",
    "medicine",
    "allergy",
    "emergency",
    "hospital",
    "bandage",
    "pain",
)
IDLE_LABEL = "not_signing"


class FrameError(ValueError):
    """Bad landmark frame: wrong dimension or non-finite coordinates."""


class WindowNotFullError(RuntimeError):
    """Matrix view requested from a window that has not filled yet."""


class DatasetFormatError(ValueError):
    """Malformed dataset file or directory; message names the offender."""


@dataclass(frozen=True)
class Vocabulary:
    """Ordered, duplicate-free label set with one designated idle label."""

    labels: tuple[str, ...] = DEFAULT_LABELS
    idle_label: str = IDLE_LABEL

    def __post_init__(self):
        if not self.labels:
            raise ValueError("vocabulary must not be empty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate labels in vocabulary: {self.labels}")
        if self.idle_label not in self.labels:
            raise ValueError(f"idle label {self.idle_label!r} not in vocabulary")

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"label {label!r} not in vocabulary") from None

    @property
    def signing_labels(self) -> tuple[str, ...]:
        return tuple(l for l in self.labels if l != self.idle_label)


def _as_coords(values, dim: int | None = None) -> np.ndarray:
    coords = np.asarray(values, dtype=np.float64)
    if coords.ndim != 1:
        raise FrameError(f"coords must be a flat vector, got shape {coords.shape}")
    if dim is not None and coords.shape[0] != dim:
        raise FrameError(f"expected {dim} coordinates, got {coords.shape[0]}")
    if not np.all(np.isfinite(coords)):
        raise FrameError("coords contain non-finite values")
    return coords


@dataclass
class LandmarkFrame:
    """One timestamped feature vector of alternating x/y coordinates."""

    timestamp_ms: int
    coords: np.ndarray

    def __post_init__(self):
        self.timestamp_ms = int(self.timestamp_ms)
        self.coords = _as_coords(self.coords)

    @property
    def dim(self) -> int:
        return self.coords.shape[0]


class SlidingWindow:
    """Fixed-capacity FIFO of frames; pushing at capacity evicts the oldest.

    The coordinate dimension is fixed either up front or by the first push;
    later frames must match it.
    """

    def __init__(self, capacity: int = DEFAULT_WINDOW_CAPACITY, dim: int | None = None):
        if capacity < 1:
            raise ValueError(f"capacity must be positive, got {capacity}")
        self.capacity = int(capacity)
        self._dim = dim
        self._frames: deque[LandmarkFrame] = deque(maxlen=self.capacity)

    def __len__(self) -> int:
        return len(self._frames)

    @property
    def dim(self) -> int | None:
        return self._dim

    @property
    def full(self) -> bool:
        return len(self._frames) == self.capacity

    @property
    def frames(self) -> tuple[LandmarkFrame, ...]:
        return tuple(self._frames)

    def push(self, frame: LandmarkFrame) -> bool:
        """Append a frame (evicting the oldest at capacity); returns the full flag."""
        if self._dim is None:
            self._dim = frame.dim
        elif frame.dim != self._dim:
            raise FrameError(
                f"frame has {frame.dim} coordinates, window is fixed at {self._dim}"
            )
        self._frames.append(frame)
        return self.full

    def matrix(self) -> np.ndarray:
        """T x D matrix view, row 0 = oldest frame, row T-1 = newest."""
        if not self.full:
            raise WindowNotFullError(
                f"window holds {len(self)} of {self.capacity} frames"
            )
        return np.stack([f.coords for f in self._frames])

    def clear(self) -> None:
        """Drop all frames; the established dimension is kept."""
        self._frames.clear()


def _as_matrix(values, dim: int | None = None) -> np.ndarray:
    matrix = np.asarray(values, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError(f"sample matrix must be 2-D, got shape {matrix.shape}")
    if dim is not None and matrix.shape[1] != dim:
        raise ValueError(f"expected {dim} columns, got {matrix.shape[1]}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("sample matrix contains non-finite values")
    return matrix


@dataclass
class GestureSample:
    """One labeled window matrix."""

    label: str
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = _as_matrix(self.matrix)


@dataclass
class Dataset:
    """Collection of gesture samples over one vocabulary.

    All sample matrices share one shape and every label is drawn from the
    vocabulary; both are checked on construction.
    """

    vocabulary: Vocabulary = field(default_factory=Vocabulary)
    samples: list[GestureSample] = field(default_factory=list)

    def __post_init__(self):
        shape = None
        for i, sample in enumerate(self.samples):
            if sample.label not in self.vocabulary:
                raise ValueError(f"sample {i}: label {sample.label!r} not in vocabulary")
            if shape is None:
                shape = sample.matrix.shape
            elif sample.matrix.shape != shape:
                raise ValueError(
                    f"sample {i}: shape {sample.matrix.shape} != {shape} of sample 0"
                )

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def frames(self) -> int | None:
        return self.samples[0].matrix.shape[0] if self.samples else None

    @property
    def dim(self) -> int | None:
        return self.samples[0].matrix.shape[1] if self.samples else None

    def label_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in self.vocabulary}
        for sample in self.samples:
            counts[sample.label] += 1
        return counts

    def stacked(self) -> tuple[np.ndarray, np.ndarray]:
        """(N, T, D) matrix stack and (N,) vocabulary-index array."""
        if not self.samples:
            raise ValueError("dataset is empty")
        x = np.stack([s.matrix for s in self.samples])
        y = np.array([self.vocabulary.index(s.label) for s in self.samples])
        return x, y


def split_dataset(dataset: Dataset, test_fraction: float, seed: int = 0
                  ) -> tuple[Dataset, Dataset]:
    """Seeded stratified split into (train, test) datasets."""
    if not 0.0 <= test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in [0, 1), got {test_fraction}")
    rng = np.random.default_rng(seed)
    by_label: dict[str, list[GestureSample]] = {}
    for sample in dataset.samples:
        by_label.setdefault(sample.label, []).append(sample)
    train: list[GestureSample] = []
    test: list[GestureSample] = []
    for label in dataset.vocabulary:
        group = by_label.get(label, [])
        if not group:
            continue
        perm = rng.permutation(len(group))
        n_test = int(round(len(group) * test_fraction))
        for pos, j in enumerate(perm):
            (test if pos < n_test else train).append(group[j])
    return (Dataset(dataset.vocabulary, train), Dataset(dataset.vocabulary, test))


# --- dataset persistence ---------------------------------------------------
#
# Directory layout: one subdirectory per label, one text file per sample.
# Sample file grammar (coordinates in shortest round-trip decimal):
#
#   label <name>
#   shape <T> <D>
#   <D space-separated values>     x T rows
#
# Saving then loading reproduces labels and matrices bit-identically.


def save_sample(path, sample: GestureSample) -> None:
    """Write one sample file at the exact given path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    t, d = sample.matrix.shape
    lines = [f"label {sample.label}", f"shape {t} {d}"]
    for row in sample.matrix:
        lines.append(" ".join(repr(v) for v in row.tolist()))
    path.write_text("\n".join(lines) + "\n")


def load_sample(path, frames: int | None = None, dim: int | None = None,
                vocabulary: Vocabulary | None = None) -> GestureSample:
    """Parse one sample file, checking shape and label against expectations."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise DatasetFormatError(f"{path}: {exc}") from exc

    def fail(msg: str):
        raise DatasetFormatError(f"{path}: {msg}")

    if len(lines) < 2 or not lines[0].startswith("label ") or not lines[1].startswith("shape "):
        fail("expected 'label' and 'shape' header lines")
    label = lines[0][len("label "):].strip()
    if vocabulary is not None and label not in vocabulary:
        fail(f"unknown label {label!r}")
    parts = lines[1].split()
    if len(parts) != 3:
        fail(f"bad shape line {lines[1]!r}")
    try:
        t, d = int(parts[1]), int(parts[2])
    except ValueError:
        fail(f"bad shape line {lines[1]!r}")
    if frames is not None and t != frames:
        fail(f"expected {frames} rows, header says {t}")
    if dim is not None and d != dim:
        fail(f"expected {dim} columns, header says {d}")
    rows = [line for line in lines[2:] if line.strip()]
    if len(rows) != t:
        fail(f"header says {t} rows, file has {len(rows)}")
    matrix = np.empty((t, d))
    for i, row in enumerate(rows):
        fields = row.split()
        if len(fields) != d:
            fail(f"row {i}: expected {d} values, got {len(fields)}")
        try:
            matrix[i] = [float(v) for v in fields]
        except ValueError:
            fail(f"row {i}: non-numeric entry")
    if not np.all(np.isfinite(matrix)):
        fail("non-finite entry")
    return GestureSample(label, matrix)


def save_dataset(root, dataset: Dataset) -> None:
    """Write every sample under root/<label>/NNNN.txt (numbered per label)."""
    root = Path(root)
    counters: dict[str, int] = {}
    for sample in dataset.samples:
        n = counters.get(sample.label, 0)
        counters[sample.label] = n + 1
        save_sample(root / sample.label / f"{n:04d}.txt", sample)


def load_dataset(root, vocabulary: Vocabulary | None = None,
                 frames: int | None = None, dim: int | None = None) -> Dataset:
    """Load a dataset directory; an empty directory yields an empty dataset.

    The vocabulary comes from the caller (default vocabulary if omitted);
    label subdirectories outside it are rejected.
    """
    root = Path(root)
    vocabulary = vocabulary or Vocabulary()
    if not root.is_dir():
        raise DatasetFormatError(f"{root}: not a directory")
    samples: list[GestureSample] = []
    for sub in sorted(p for p in root.iterdir() if p.is_dir()):
        if sub.name not in vocabulary:
            raise DatasetFormatError(f"{sub}: label directory not in vocabulary")
        for file in sorted(sub.glob("*.txt")):
            sample = load_sample(file, frames=frames, dim=dim, vocabulary=vocabulary)
            if sample.label != sub.name:
                raise DatasetFormatError(
                    f"{file}: label {sample.label!r} does not match directory {sub.name!r}"
                )
            samples.append(sample)
    try:
        return Dataset(vocabulary, samples)
    except ValueError as exc:
        raise DatasetFormatError(f"{root}: {exc}") from exc
