"""Model evaluation: per-class confusion counts and overall accuracy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .landmarks import Dataset, Vocabulary


@dataclass(frozen=True)
class EvalReport:
    """Confusion matrix over the vocabulary; rows = true, columns = predicted."""

    vocabulary: Vocabulary
    confusion: np.ndarray

    @property
    def totals(self) -> np.ndarray:
        """True sample count per class."""
        return self.confusion.sum(axis=1)

    @property
    def true_positives(self) -> np.ndarray:
        return np.diag(self.confusion)

    @property
    def false_positives(self) -> np.ndarray:
        """Samples of other classes predicted as this class."""
        return self.confusion.sum(axis=0) - self.true_positives

    @property
    def accuracy(self) -> float:
        return float(self.true_positives.sum() / self.confusion.sum())

    def to_text(self) -> str:
        """Per-class table: class, total samples, true/false positives."""
        rows = [f"{'Class':<14}{'Total Samples':>16}{'True Positives':>16}{'False Positives':>17}"]
        for i, label in enumerate(self.vocabulary):
            rows.append(
                f"{label:<14}{int(self.totals[i]):>16d}"
                f"{int(self.true_positives[i]):>16d}{int(self.false_positives[i]):>17d}"
            )
        rows.append(f"Overall accuracy: {100.0 * self.accuracy:.2f}%")
        return "\n".join(rows)

    def to_csv(self) -> str:
        rows = ["class,total_samples,true_positives,false_positives"]
        for i, label in enumerate(self.vocabulary):
            rows.append(f"{label},{int(self.totals[i])},"
                        f"{int(self.true_positives[i])},{int(self.false_positives[i])}")
        return "\n".join(rows) + "\n"


def run_eval(classify: Callable[[np.ndarray], str], dataset: Dataset) -> EvalReport:
    """Classify every dataset sample and tally the confusion matrix.

    ``classify`` maps a window matrix to a label; pass ``model_classifier``
    for an LSTM model.
    """
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    c = len(dataset.vocabulary)
    confusion = np.zeros((c, c), dtype=np.int64)
    for sample in dataset.samples:
        predicted = classify(sample.matrix)
        confusion[dataset.vocabulary.index(sample.label),
                  dataset.vocabulary.index(predicted)] += 1
    return EvalReport(dataset.vocabulary, confusion)


def model_classifier(model) -> Callable[[np.ndarray], str]:
    """Adapter: model.predict as a plain matrix -> label function."""
    return lambda matrix: model.predict(matrix)[0]
