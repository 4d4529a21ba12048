"""Streaming segmentation of per-frame predictions into keywords.

Signing predictions feed a per-label frequency counter; once the stream has
been idle for the configured threshold (event time, never wall clock), the
counter's most frequent label becomes a keyword, provided it reached the
minimum vote count and is not already in the keyword buffer. The buffer
stays duplicate-free and never contains the idle label.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .landmarks import Vocabulary


class TimestampRegressionError(ValueError):
    """Event timestamps must be non-decreasing within one stream."""


@dataclass(frozen=True)
class SegmentationConfig:
    time_threshold_s: float = 5.0     # idle time before a keyword is emitted
    min_count: int = 5                # counter votes required to emit
    confidence_floor: float = 0.0     # predictions below it count as idle

    def __post_init__(self):
        if self.time_threshold_s <= 0:
            raise ValueError(f"time threshold must be > 0, got {self.time_threshold_s}")
        if self.min_count < 1:
            raise ValueError(f"min_count must be >= 1, got {self.min_count}")
        if not 0.0 <= self.confidence_floor <= 1.0:
            raise ValueError(
                f"confidence floor must be in [0, 1], got {self.confidence_floor}"
            )


@dataclass(frozen=True)
class KeywordEvent:
    label: str
    emitted_at_ms: int
    counts: dict[str, int]    # counter snapshot at emission time


@dataclass
class Segmenter:
    """Frequency counter + idle timer + duplicate-free keyword buffer."""

    vocabulary: Vocabulary = field(default_factory=Vocabulary)
    config: SegmentationConfig = field(default_factory=SegmentationConfig)
    counts: dict[str, int] = field(default_factory=dict)
    idle_since_ms: int | None = None
    keywords: list[str] = field(default_factory=list)
    _last_t_ms: int | None = None

    def on_prediction(self, label: str, confidence: float, t_ms: int
                      ) -> KeywordEvent | None:
        """Consume one prediction; returns a KeywordEvent when one falls out."""
        if label not in self.vocabulary:
            raise ValueError(f"label {label!r} not in vocabulary")
        if self._last_t_ms is not None and t_ms < self._last_t_ms:
            raise TimestampRegressionError(
                f"timestamp {t_ms} before previous {self._last_t_ms}"
            )
        self._last_t_ms = t_ms

        is_idle = label == self.vocabulary.idle_label or confidence < self.config.confidence_floor
        if not is_idle:
            self.counts[label] = self.counts.get(label, 0) + 1
            self.idle_since_ms = None
            return None

        if self.idle_since_ms is None:
            self.idle_since_ms = t_ms
        if t_ms - self.idle_since_ms < self.config.time_threshold_s * 1000.0:
            return None

        event = None
        if self.counts and max(self.counts.values()) >= self.config.min_count:
            winner = self._argmax()
            if winner not in self.keywords:
                self.keywords.append(winner)
                event = KeywordEvent(winner, t_ms, dict(self.counts))
        self.counts = {}
        self.idle_since_ms = None
        return event

    def _argmax(self) -> str:
        top = max(self.counts.values())
        tied = [label for label, n in self.counts.items() if n == top]
        return min(tied, key=self.vocabulary.index)

    def reset(self) -> None:
        """Back to a fresh state; only the config and vocabulary survive."""
        self.counts = {}
        self.idle_since_ms = None
        self.keywords = []
        self._last_t_ms = None

    def take_keywords(self) -> list[str]:
        """Keywords in detection order; clears the buffer, keeps counter/timer."""
        out = self.keywords
        self.keywords = []
        return out
