"""Dynamic-time-warping distance, DTW-based kNN, and a latency benchmark.

The distance is the minimum cumulative squared-Euclidean frame cost over
monotone alignment paths (match/insert/delete moves, each weight 1),
optionally constrained to a fixed band around the diagonal. The kNN
classifier exists as the slow-but-exact contrast to the LSTM; the benchmark
measures both over one query set.
"""

from __future__ import annotations

import platform
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .landmarks import Dataset, GestureSample
from .lstm import LstmClassifier

_INF = float("inf")


@dataclass(frozen=True)
class DtwOptions:
    """band: half-width of the |i - j| <= band constraint; None = unconstrained."""

    band: int | None = None

    def __post_init__(self):
        if self.band is not None and self.band < 1:
            raise ValueError(f"band half-width must be >= 1, got {self.band}")


def _check_pair(a: np.ndarray, b: np.ndarray, options: DtwOptions):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError(f"sequences must be 2-D, got {a.shape} and {b.shape}")
    if a.shape[0] < 1 or b.shape[0] < 1:
        raise ValueError("sequences must contain at least one frame")
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"feature dims differ: {a.shape[1]} vs {b.shape[1]}")
    if options.band is not None and abs(a.shape[0] - b.shape[0]) > options.band:
        raise ValueError(
            f"band {options.band} cannot align lengths {a.shape[0]} and {b.shape[0]}"
        )
    return a, b


def dtw_distance(a: np.ndarray, b: np.ndarray,
                 options: DtwOptions = DtwOptions()) -> float:
    """Minimum cumulative alignment cost between two frame sequences."""
    a, b = _check_pair(a, b, options)
    n, m = a.shape[0], b.shape[0]
    local = ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2).tolist()
    band = options.band
    prev = [_INF] * (m + 1)
    prev[0] = 0.0
    for i in range(n):
        curr = [_INF] * (m + 1)
        row = local[i]
        j_lo = 0 if band is None else max(0, i - band)
        j_hi = m if band is None else min(m, i + band + 1)
        for j in range(j_lo, j_hi):
            best = prev[j + 1]
            if prev[j] < best:
                best = prev[j]
            if curr[j] < best:
                best = curr[j]
            curr[j + 1] = row[j] + best
        prev = curr
    return prev[m]


def dtw_distances_to_stack(query: np.ndarray, stack: np.ndarray,
                           options: DtwOptions = DtwOptions()) -> np.ndarray:
    """DTW distance from one query to each sequence of an (N, T, D) stack.

    Same recurrence as dtw_distance, vectorized across the stack; the local
    costs come from a matrix product, so values may differ from the pairwise
    routine by float roundoff.
    """
    query = np.asarray(query, dtype=np.float64)
    stack = np.asarray(stack, dtype=np.float64)
    if stack.ndim != 3:
        raise ValueError(f"stack must be (N, T, D), got shape {stack.shape}")
    _check_pair(query, stack[0], options)
    n_seq, m, _ = stack.shape
    n = query.shape[0]
    qq = (query ** 2).sum(axis=1)
    ss = (stack ** 2).sum(axis=2)
    cross = np.einsum("td,nud->ntu", query, stack)
    local = np.maximum(qq[None, :, None] + ss[:, None, :] - 2.0 * cross, 0.0)
    band = options.band
    prev = np.full((n_seq, m + 1), _INF)
    prev[:, 0] = 0.0
    for i in range(n):
        curr = np.full((n_seq, m + 1), _INF)
        j_lo = 0 if band is None else max(0, i - band)
        j_hi = m if band is None else min(m, i + band + 1)
        for j in range(j_lo, j_hi):
            best = np.minimum(np.minimum(prev[:, j + 1], prev[:, j]), curr[:, j])
            curr[:, j + 1] = local[:, i, j] + best
        prev = curr
    return prev[:, m]


@dataclass(frozen=True)
class Neighbor:
    index: int
    label: str
    distance: float


@dataclass(frozen=True)
class KnnResult:
    label: str
    neighbors: tuple[Neighbor, ...]


def knn_classify(dataset: Dataset, query: np.ndarray, k: int = 1,
                 options: DtwOptions = DtwOptions(),
                 stack: np.ndarray | None = None) -> KnnResult:
    """Majority label among the k nearest dataset samples under DTW.

    Distance ties break by dataset order, vote ties by smallest mean
    distance and then lowest vocabulary index. ``stack`` lets callers reuse
    a precomputed (N, T, D) stack of the dataset matrices.
    """
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    if not 1 <= k <= len(dataset):
        raise ValueError(f"k must be in [1, {len(dataset)}], got {k}")
    if stack is None:
        stack = np.stack([s.matrix for s in dataset.samples])
    distances = dtw_distances_to_stack(query, stack, options)
    order = np.argsort(distances, kind="stable")[:k]
    neighbors = tuple(
        Neighbor(int(i), dataset.samples[int(i)].label, float(distances[int(i)]))
        for i in order
    )
    votes: dict[str, list[float]] = {}
    for nb in neighbors:
        votes.setdefault(nb.label, []).append(nb.distance)
    top = max(len(v) for v in votes.values())
    tied = [label for label, v in votes.items() if len(v) == top]
    winner = min(
        tied,
        key=lambda lbl: (sum(votes[lbl]) / len(votes[lbl]), dataset.vocabulary.index(lbl)),
    )
    return KnnResult(winner, neighbors)


# --- latency/accuracy benchmark ------------------------------------------------


@dataclass(frozen=True)
class ClassifierStats:
    name: str
    accuracy: float
    mean_latency_ms: float
    median_latency_ms: float
    n: int

    def __post_init__(self):
        if not 0.0 <= self.accuracy <= 1.0:
            raise ValueError(f"accuracy out of range: {self.accuracy}")
        if self.mean_latency_ms <= 0 or self.median_latency_ms <= 0:
            raise ValueError("latencies must be positive")


@dataclass(frozen=True)
class BenchmarkReport:
    rows: tuple[ClassifierStats, ...]
    environment: str

    def to_text(self) -> str:
        """Fixed-column table: classifier, accuracy, mean/median latency, n."""
        header = f"{'classifier':<12}{'accuracy':>10}{'mean_latency_ms':>18}{'median_latency_ms':>20}{'n':>8}"
        lines = [header]
        for row in self.rows:
            lines.append(
                f"{row.name:<12}{row.accuracy:>10.4f}{row.mean_latency_ms:>18.3f}"
                f"{row.median_latency_ms:>20.3f}{row.n:>8d}"
            )
        lines.append(f"# environment: {self.environment}")
        return "\n".join(lines)

    def stats(self, name: str) -> ClassifierStats:
        for row in self.rows:
            if row.name == name:
                return row
        raise KeyError(name)


def benchmark(dataset: Dataset, model: LstmClassifier, k: int = 1,
              queries: list[GestureSample] | None = None,
              options: DtwOptions = DtwOptions()) -> BenchmarkReport:
    """Per-prediction wall-clock latency and accuracy for DTW-kNN vs LSTM.

    Queries default to the dataset's own samples, which makes the k=1
    DTW-kNN pass a training-accuracy measurement. Timings run serially.
    """
    if queries is None:
        queries = list(dataset.samples)
    if not queries:
        raise ValueError("query set is empty")
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    if dataset.dim != model.input_dim:
        raise ValueError(
            f"dataset dim {dataset.dim} does not match model dim {model.input_dim}"
        )
    stack = np.stack([s.matrix for s in dataset.samples])

    knn_latencies, knn_correct = [], 0
    for sample in queries:
        start = time.perf_counter()
        result = knn_classify(dataset, sample.matrix, k=k, options=options, stack=stack)
        knn_latencies.append((time.perf_counter() - start) * 1000.0)
        knn_correct += result.label == sample.label

    lstm_latencies, lstm_correct = [], 0
    for sample in queries:
        start = time.perf_counter()
        label, _ = model.predict(sample.matrix)
        lstm_latencies.append((time.perf_counter() - start) * 1000.0)
        lstm_correct += label == sample.label

    n = len(queries)
    rows = (
        ClassifierStats("dtw-knn", knn_correct / n,
                        statistics.fmean(knn_latencies),
                        statistics.median(knn_latencies), n),
        ClassifierStats("lstm", lstm_correct / n,
                        statistics.fmean(lstm_latencies),
                        statistics.median(lstm_latencies), n),
    )
    environment = f"{platform.platform()} python-{platform.python_version()} numpy-{np.__version__}"
    return BenchmarkReport(rows, environment)
