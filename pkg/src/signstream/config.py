"""Engine configuration from JSON files and environment variables.

Precedence, lowest to highest: built-in defaults, config file, SIGNSTREAM_*
environment variables. Everything ends up in one flat EngineConfig that the
CLI hands to the session and server layers.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .landmarks import DEFAULT_LABELS, Vocabulary
from .segmentation import SegmentationConfig
from .session import SessionConfig


class ConfigError(ValueError):
    """Unusable configuration value or file."""


ENV_PREFIX = "SIGNSTREAM_"


@dataclass(frozen=True)
class EngineConfig:
    host: str = "127.0.0.1"
    port: int = 8765
    model_path: str | None = None
    sentences_path: str | None = None
    labels: tuple = DEFAULT_LABELS
    idle_label: str = "not_signing"
    landmark_count: int = 129
    window_capacity: int = 30
    stride: int = 1
    time_threshold_s: float = 5.0
    min_count: int = 5
    confidence_floor: float = 0.0

    def vocabulary(self) -> Vocabulary:
        return Vocabulary(labels=tuple(self.labels), idle_label=self.idle_label)

    def session_config(self) -> SessionConfig:
        seg = SegmentationConfig(
            time_threshold_s=self.time_threshold_s,
            min_count=self.min_count,
            confidence_floor=self.confidence_floor,
        )
        return SessionConfig(
            window_capacity=self.window_capacity,
            landmark_count=self.landmark_count,
            segmentation=seg,
            stride=self.stride,
        )


_INT_KEYS = {"port", "landmark_count", "window_capacity", "stride", "min_count"}
_FLOAT_KEYS = {"time_threshold_s", "confidence_floor"}


def _coerce(key: str, raw):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
    if key == "labels":
        if isinstance(raw, str):
            raw = [p.strip() for p in raw.split(",") if p.strip()]
        if not isinstance(raw, (list, tuple)) or not all(isinstance(x, str) for x in raw):
            raise ConfigError(f"labels: expected a list of strings, got {raw!r}")
        return tuple(raw)
    return raw


def load_config(path=None, env=None) -> EngineConfig:
    """Build an EngineConfig from defaults, an optional file, and env vars."""
    env = os.environ if env is None else env
    cfg = EngineConfig()
    known = {f.name for f in fields(EngineConfig)}

    if path is not None:
        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from None
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: top level must be an object")
        unknown = sorted(set(doc) - known)
        if unknown:
            raise ConfigError(f"{path}: unknown keys {unknown}")
        cfg = replace(cfg, **{k: _coerce(k, v) for k, v in doc.items()})

    overrides = {}
    for key in known:
        raw = env.get(ENV_PREFIX + key.upper())
        if raw is not None:
            overrides[key] = _coerce(key, raw)
    if overrides:
        cfg = replace(cfg, **overrides)

    try:
        cfg.vocabulary()
        cfg.session_config()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg
