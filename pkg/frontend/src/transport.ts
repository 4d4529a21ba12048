// WebSocket plumbing behind a small interface so the controller can be
// driven by a fake in tests and by the browser's WebSocket (or the ws
// package under Node) in production.

export interface Transport {
  send(line: string): void;
  close(): void;
}

export interface TransportEvents {
  onOpen(): void;
  onLine(line: string): void;
  /** fired once when the socket closes or errors; detail is best-effort */
  onClose(detail: string): void;
}

export type TransportFactory = (url: string, events: TransportEvents) => Transport;

interface WebSocketLike {
  // handler params are any so both the DOM WebSocket and the ws package's
  // class satisfy this shape without adapters
  onopen: ((ev: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
  onclose: ((ev: any) => void) | null;
  onerror: ((ev: any) => void) | null;
  send(data: string): void;
  close(): void;
}

type WebSocketCtor = new (url: string) => WebSocketLike;

/**
 * Adapt a WebSocket constructor (browser global, or the ws package's
 * compatible class) to the Transport interface. Messages are split on
 * newlines defensively; the engine sends one line per message.
 */
export function webSocketTransport(WS: WebSocketCtor): TransportFactory {
  return (url, events) => {
    const ws = new WS(url);
    let closed = false;
    const closeOnce = (detail: string) => {
      if (!closed) {
        closed = true;
        events.onClose(detail);
      }
    };
    ws.onopen = () => events.onOpen();
    ws.onmessage = (ev: { data: unknown }) => {
      const text =
        typeof ev.data === "string" ? ev.data : String(ev.data ?? "");
      for (const line of text.split("\n")) {
        if (line.trim() !== "") events.onLine(line);
      }
    };
    ws.onerror = () => closeOnce("connection error");
    ws.onclose = (ev: { reason?: string }) =>
      closeOnce(ev.reason ? `closed: ${ev.reason}` : "closed");
    return {
      send: (line) => ws.send(line),
      close: () => ws.close(),
    };
  };
}
