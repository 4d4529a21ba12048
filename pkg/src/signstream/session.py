"""Per-session pipeline orchestration: window -> classifier -> segmentation
-> sentence generation, driven entirely by inbound wire messages.

A session is a deterministic function of its inbound message sequence: all
timing uses the event time carried by frames, and every outbound message is
appended to an ordered event log.
"""

from __future__ import annotations

import itertools

from .landmarks import (DEFAULT_LANDMARK_COUNT, DEFAULT_WINDOW_CAPACITY,
                        FrameError, LandmarkFrame, SlidingWindow, Vocabulary)
from .protocol import (E_EMPTY_KEYWORDS, E_PROTOCOL, E_SCHEMA, E_TIMESTAMP,
                       E_VERSION, PROTOCOL_VERSION, Ack, Control, ErrorMsg,
                       Frame, Hello, InboundMessage, Keyword, OutboundMessage,
                       Prediction, ProtocolError, Sentence, encode,
                       parse_inbound)
from .segmentation import SegmentationConfig, Segmenter
from .sentences import EmptyKeywordsError, SentenceGenerator, TableGenerator

_session_ids = itertools.count(1)

IDLE = "idle"
INTERPRETING = "interpreting"


class SessionConfig:
    """Stream and pipeline configuration shared by live serving and replay."""

    def __init__(self, window_capacity: int = DEFAULT_WINDOW_CAPACITY,
                 landmark_count: int = DEFAULT_LANDMARK_COUNT,
                 segmentation: SegmentationConfig | None = None,
                 stride: int = 1):
        if stride < 1:
            raise ValueError(f"stride must be >= 1, got {stride}")
        self.window_capacity = window_capacity
        self.landmark_count = landmark_count
        self.segmentation = segmentation or SegmentationConfig()
        self.stride = stride

    @property
    def dim(self) -> int:
        return 2 * self.landmark_count


class Session:
    """One signer's connection: run-state, window, segmenter, event log.

    Owned by a single consumer; the model handle is only read.
    """

    def __init__(self, model, config: SessionConfig | None = None,
                 generator: SentenceGenerator | None = None,
                 session_id: int | None = None):
        self.id = session_id if session_id is not None else next(_session_ids)
        self.model = model
        self.config = config or SessionConfig()
        self.generator = generator or TableGenerator()
        self.vocabulary: Vocabulary = model.vocabulary
        self.run_state = IDLE
        self.window = SlidingWindow(self.config.window_capacity, dim=self.config.dim)
        self.segmenter = Segmenter(self.vocabulary, self.config.segmentation)
        self.event_log: list[str] = []     # encoded outbound lines, append-only
        self._hello_seen = False
        self._last_t: int | None = None
        self._frames_since_start = 0

    # --- entry points ---------------------------------------------------------

    def handle_line(self, line: str) -> list[str]:
        """Process one raw inbound line; returns encoded outbound lines."""
        try:
            msg = parse_inbound(line)
        except ProtocolError as exc:
            encoded = self._emit([ErrorMsg(exc.code, str(exc))])
            self.event_log.extend(encoded)
            return encoded
        return self._emit(self.handle_message(msg))

    def handle_message(self, msg: InboundMessage) -> list[OutboundMessage]:
        """Process one parsed inbound message; returns outbound messages.

        Outbound messages are also appended (encoded) to the event log.
        """
        if isinstance(msg, Hello):
            out = self._on_hello(msg)
        elif isinstance(msg, Frame):
            out = self._on_frame(msg)
        elif isinstance(msg, Control):
            out = self._on_control(msg)
        else:
            out = [ErrorMsg(E_PROTOCOL, f"unknown message {msg!r}")]
        self.event_log.extend(encode(m) for m in out)
        return out

    def _emit(self, out: list[OutboundMessage]) -> list[str]:
        return [encode(m) for m in out]

    # --- message handlers -------------------------------------------------------

    def _on_hello(self, msg: Hello) -> list[OutboundMessage]:
        if self._hello_seen:
            return [ErrorMsg(E_PROTOCOL, "duplicate hello")]
        if msg.protocol != PROTOCOL_VERSION:
            return [ErrorMsg(
                E_VERSION,
                f"protocol {msg.protocol} not supported (engine speaks {PROTOCOL_VERSION})",
            )]
        if msg.landmarks is not None and 2 * msg.landmarks != self.config.dim:
            return [ErrorMsg(
                E_SCHEMA,
                f"stream has {msg.landmarks} landmarks, engine expects "
                f"{self.config.landmark_count}",
            )]
        if msg.vocabulary is not None and tuple(msg.vocabulary) != self.vocabulary.labels:
            return [ErrorMsg(E_SCHEMA, "vocabulary does not match the loaded model")]
        self._hello_seen = True
        return [Ack("hello")]

    def _on_frame(self, msg: Frame) -> list[OutboundMessage]:
        if not self._hello_seen:
            return [ErrorMsg(E_PROTOCOL, "frame before hello")]
        if self._last_t is not None and msg.t < self._last_t:
            return [ErrorMsg(
                E_TIMESTAMP, f"timestamp {msg.t} before previous {self._last_t}"
            )]
        if len(msg.coords) != self.config.dim:
            return [ErrorMsg(
                E_SCHEMA,
                f"frame has {len(msg.coords)} coords, stream dimension is {self.config.dim}",
            )]
        self._last_t = msg.t
        if self.run_state != INTERPRETING:
            return []
        try:
            full = self.window.push(LandmarkFrame(msg.t, msg.coords))
        except FrameError as exc:
            return [ErrorMsg(E_SCHEMA, str(exc))]
        self._frames_since_start += 1
        if not full or (self._frames_since_start - self.window.capacity) % self.config.stride:
            return []
        label, confidence = self.model.predict(self.window.matrix())
        out: list[OutboundMessage] = [Prediction(msg.t, label, confidence, True)]
        event = self.segmenter.on_prediction(label, confidence, msg.t)
        if event is not None:
            out.append(Keyword(event.emitted_at_ms, event.label,
                               tuple(self.segmenter.keywords)))
        return out

    def _on_control(self, msg: Control) -> list[OutboundMessage]:
        if not self._hello_seen:
            return [ErrorMsg(E_PROTOCOL, f"control {msg.action!r} before hello")]
        out: list[OutboundMessage] = [Ack(msg.action)]
        if msg.action == "start":
            self.run_state = INTERPRETING
            self.window.clear()
            self._frames_since_start = 0
        elif msg.action == "stop":
            self.run_state = IDLE
        elif msg.action == "reset":
            self.run_state = IDLE
            self.window.clear()
            self._frames_since_start = 0
            self.segmenter.reset()
        elif msg.action == "generate":
            keywords = self.segmenter.take_keywords()
            try:
                result = self.generator.generate(keywords)
            except EmptyKeywordsError:
                out.append(ErrorMsg(E_EMPTY_KEYWORDS, "no keywords detected yet"))
            else:
                out.append(Sentence(self._last_t or 0, result.text, result.matched))
        return out
