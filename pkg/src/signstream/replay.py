"""Deterministic replay of recorded inbound message streams.

A replay file holds one inbound wire record per line, exactly as a live
client would send them. Replaying feeds the lines through a fresh session;
because all pipeline timing is event time, the outbound log depends only on
the file contents, never on the speed setting (which merely paces delivery
for live demos).
"""

from __future__ import annotations

import json
import time
from pathlib import Path

from .session import Session, SessionConfig


class ReplayFormatError(ValueError):
    """Line that is not a JSON object; message carries the line number."""


def load_stream(path) -> list[str]:
    """Read non-empty lines of a replay file, verifying each parses as JSON."""
    path = Path(path)
    lines = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            json.loads(line)
        except json.JSONDecodeError as exc:
            raise ReplayFormatError(f"{path}:{lineno}: {exc}") from None
        lines.append(line)
    return lines


def write_stream(path, lines: list[str]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(line + "\n" for line in lines))


def replay(lines: list[str], model, config: SessionConfig | None = None,
           generator=None, speed: float | None = None) -> list[str]:
    """Feed inbound lines through a fresh session; returns the outbound log.

    ``speed``: None or inf replays as fast as possible; a positive value
    paces frames by their event-time gaps divided by the speed factor.
    Pacing never changes the log.
    """
    if speed is not None and speed <= 0:
        raise ValueError(f"speed must be positive, got {speed}")
    session = Session(model, config=config, generator=generator)
    prev_t: int | None = None
    for line in lines:
        if speed is not None and speed != float("inf"):
            record = json.loads(line)
            t = record.get("t")
            if isinstance(t, int):
                if prev_t is not None and t > prev_t:
                    time.sleep((t - prev_t) / 1000.0 / speed)
                prev_t = t
        session.handle_line(line)
    return list(session.event_log)


def replay_file(path, model, config: SessionConfig | None = None,
                generator=None, speed: float | None = None) -> list[str]:
    return replay(load_stream(path), model, config=config, generator=generator,
                  speed=speed)
