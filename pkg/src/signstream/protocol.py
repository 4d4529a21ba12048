"""Newline-delimited JSON wire protocol shared by live sessions and replay.

Inbound record types: hello, frame, control. Outbound: prediction, keyword,
sentence, error, ack. One JSON object per line, UTF-8; encoding is
deterministic (fixed key order, shortest-round-trip floats), so identical
sessions produce byte-identical logs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

PROTOCOL_VERSION = 1

CONTROL_ACTIONS = ("start", "stop", "generate", "reset")

# error codes
E_PROTOCOL = "protocol"          # message violates session/protocol rules
E_SCHEMA = "schema"              # record malformed or fields out of contract
E_TIMESTAMP = "timestamp"        # event time went backwards
E_VERSION = "version"            # hello protocol version not supported
E_EMPTY_KEYWORDS = "empty_keywords"  # generate with nothing to say


class ProtocolError(ValueError):
    """Invalid inbound record; carries the wire error code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Hello:
    protocol: int = PROTOCOL_VERSION
    landmarks: int | None = None          # wire field "f": landmark count
    vocabulary: tuple[str, ...] | None = None


@dataclass(frozen=True)
class Frame:
    t: int
    coords: tuple[float, ...]


@dataclass(frozen=True)
class Control:
    action: str


@dataclass(frozen=True)
class Prediction:
    t: int
    label: str
    confidence: float
    window_full: bool = True


@dataclass(frozen=True)
class Keyword:
    t: int
    label: str
    keywords: tuple[str, ...]


@dataclass(frozen=True)
class Sentence:
    t: int
    text: str
    matched: bool


@dataclass(frozen=True)
class ErrorMsg:
    code: str
    message: str


@dataclass(frozen=True)
class Ack:
    of: str


InboundMessage = Hello | Frame | Control
OutboundMessage = Prediction | Keyword | Sentence | ErrorMsg | Ack


def _require(record: dict, key: str, kinds, line_kind: str):
    if key not in record:
        raise ProtocolError(E_SCHEMA, f"{line_kind} record missing field {key!r}")
    value = record[key]
    if not isinstance(value, kinds) or isinstance(value, bool):
        raise ProtocolError(E_SCHEMA, f"{line_kind} field {key!r} has wrong type")
    return value


def parse_inbound(line: str) -> InboundMessage:
    """Parse one inbound line; raises ProtocolError on any malformation."""
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(E_SCHEMA, f"invalid JSON: {exc}") from None
    if not isinstance(record, dict):
        raise ProtocolError(E_SCHEMA, "record must be a JSON object")
    kind = record.get("type")
    if kind == "hello":
        protocol = record.get("protocol", PROTOCOL_VERSION)
        if not isinstance(protocol, int) or isinstance(protocol, bool):
            raise ProtocolError(E_SCHEMA, "hello field 'protocol' has wrong type")
        landmarks = record.get("f")
        if landmarks is not None and (not isinstance(landmarks, int) or isinstance(landmarks, bool) or landmarks < 1):
            raise ProtocolError(E_SCHEMA, "hello field 'f' must be a positive integer")
        vocabulary = record.get("vocabulary")
        if vocabulary is not None:
            if (not isinstance(vocabulary, list)
                    or not all(isinstance(v, str) and v for v in vocabulary)):
                raise ProtocolError(E_SCHEMA, "hello field 'vocabulary' must be a list of labels")
            vocabulary = tuple(vocabulary)
        return Hello(protocol, landmarks, vocabulary)
    if kind == "frame":
        t = _require(record, "t", (int,), "frame")
        coords = record.get("coords")
        if not isinstance(coords, list) or not coords:
            raise ProtocolError(E_SCHEMA, "frame field 'coords' must be a non-empty list")
        values = []
        for v in coords:
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ProtocolError(E_SCHEMA, "frame coords must be finite numbers")
            values.append(float(v))
        return Frame(t, tuple(values))
    if kind == "control":
        action = _require(record, "action", (str,), "control")
        if action not in CONTROL_ACTIONS:
            raise ProtocolError(
                E_PROTOCOL, f"unknown control action {action!r} "
                f"(expected one of {', '.join(CONTROL_ACTIONS)})"
            )
        return Control(action)
    if kind is None:
        raise ProtocolError(E_SCHEMA, "record missing 'type' field")
    raise ProtocolError(E_PROTOCOL, f"unknown message type {kind!r}")


def encode(msg: InboundMessage | OutboundMessage) -> str:
    """One deterministic JSON line (no trailing newline) for any message."""
    if isinstance(msg, Hello):
        record: dict = {"type": "hello", "protocol": msg.protocol}
        if msg.landmarks is not None:
            record["f"] = msg.landmarks
        if msg.vocabulary is not None:
            record["vocabulary"] = list(msg.vocabulary)
    elif isinstance(msg, Frame):
        record = {"type": "frame", "t": msg.t, "coords": list(msg.coords)}
    elif isinstance(msg, Control):
        record = {"type": "control", "action": msg.action}
    elif isinstance(msg, Prediction):
        record = {"type": "prediction", "t": msg.t, "label": msg.label,
                  "confidence": msg.confidence, "window_full": msg.window_full}
    elif isinstance(msg, Keyword):
        record = {"type": "keyword", "t": msg.t, "label": msg.label,
                  "keywords": list(msg.keywords)}
    elif isinstance(msg, Sentence):
        record = {"type": "sentence", "t": msg.t, "text": msg.text,
                  "matched": msg.matched}
    elif isinstance(msg, ErrorMsg):
        record = {"type": "error", "code": msg.code, "message": msg.message}
    elif isinstance(msg, Ack):
        record = {"type": "ack", "of": msg.of}
    else:
        raise TypeError(f"not a wire message: {msg!r}")
    return json.dumps(record, separators=(",", ":"), ensure_ascii=False)
