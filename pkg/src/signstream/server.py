"""WebSocket serving of the session pipeline.

One session per connection, processed serially in the connection's handler
thread; the model is shared read-only across connections. Optionally tees
every inbound line to a record file that `replay` accepts unchanged.
"""

from __future__ import annotations

import logging
import threading
from pathlib import Path

from websockets.sync.server import serve as ws_serve

from .session import Session, SessionConfig

log = logging.getLogger(__name__)

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8765


class EngineServer:
    """Blocking WebSocket server wrapper with a stoppable lifecycle."""

    def __init__(self, model, config: SessionConfig | None = None, generator=None,
                 host: str = DEFAULT_HOST, port: int = DEFAULT_PORT,
                 record_path=None):
        self.model = model
        self.config = config or SessionConfig()
        self.generator = generator
        self.host = host
        self.port = port
        self.record_path = Path(record_path) if record_path else None
        self.bound_port: int | None = None
        self.ready = threading.Event()
        self._server = None
        self._record_lock = threading.Lock()

    def _record(self, line: str) -> None:
        if self.record_path is None:
            return
        with self._record_lock:
            with open(self.record_path, "a") as fh:
                fh.write(line + "\n")

    def _handler(self, ws) -> None:
        session = Session(self.model, config=self.config, generator=self.generator)
        log.info("session %d connected from %s", session.id, ws.remote_address)
        for message in ws:
            if isinstance(message, bytes):
                message = message.decode("utf-8", errors="replace")
            for line in message.splitlines():
                if not line.strip():
                    continue
                self._record(line)
                for out in session.handle_line(line):
                    ws.send(out)
        log.info("session %d closed (%d events)", session.id, len(session.event_log))

    def serve_forever(self) -> None:
        if self.record_path is not None:
            self.record_path.parent.mkdir(parents=True, exist_ok=True)
            self.record_path.write_text("")
        with ws_serve(self._handler, self.host, self.port) as server:
            self._server = server
            self.bound_port = server.socket.getsockname()[1]
            self.ready.set()
            log.info("listening on ws://%s:%d", self.host, self.bound_port)
            server.serve_forever()

    def start_background(self) -> threading.Thread:
        """Serve on a daemon thread; returns once the socket is bound."""
        thread = threading.Thread(target=self.serve_forever, daemon=True)
        thread.start()
        if not self.ready.wait(timeout=10.0):
            raise RuntimeError("server did not come up within 10 s")
        return thread

    def shutdown(self) -> None:
        if self._server is not None:
            self._server.shutdown()


def serve(model, config: SessionConfig | None = None, generator=None,
          host: str = DEFAULT_HOST, port: int = DEFAULT_PORT,
          record_path=None) -> None:
    """Serve until interrupted."""
    EngineServer(model, config, generator, host, port, record_path).serve_forever()
