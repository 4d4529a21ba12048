// Console view state and its reducer. The state only ever reflects what the
// engine confirmed: keyword chips mirror the snapshot carried by keyword
// events, the run-state flips on acks, never on button presses. That makes
// the displayed history comparable with the server's own log line by line.

import type { ControlAction, ServerMessage } from "./protocol.js";

export type ConnectionStatus =
  | "disconnected"
  | "connecting"
  | "connected"
  | "failed";

export type CameraStatus = "off" | "starting" | "on" | "denied" | "failed";

export type RunState = "idle" | "interpreting";

export interface LivePrediction {
  t: number;
  label: string;
  confidence: number;
}

export interface ConsoleState {
  connection: ConnectionStatus;
  /** human-readable reason when connection is "failed" */
  connectionDetail: string;
  camera: CameraStatus;
  cameraDetail: string;
  runState: RunState;
  /** control that was sent but not yet acked; buttons stay disabled */
  pending: ControlAction | null;
  prediction: LivePrediction | null;
  /** mirror of the engine's keyword buffer, straight from keyword events */
  keywords: readonly string[];
  sentence: { text: string; matched: boolean } | null;
  /** caption overlay text; follows the latest sentence event */
  caption: string;
  /** gentle, non-fatal message (empty keywords, dropped frame, ...) */
  notice: string;
  /** every raw line received from the engine, in arrival order */
  serverLog: readonly string[];
}

export function initialState(): ConsoleState {
  return {
    connection: "disconnected",
    connectionDetail: "",
    camera: "off",
    cameraDetail: "",
    runState: "idle",
    pending: null,
    prediction: null,
    keywords: [],
    sentence: null,
    caption: "",
    notice: "",
    serverLog: [],
  };
}

/** Append a raw received line to the state's server log. */
export function recordLine(state: ConsoleState, line: string): ConsoleState {
  return { ...state, serverLog: [...state.serverLog, line] };
}

/**
 * Apply one parsed server message. Pure; feeding the same event twice in a
 * row yields the same view, because every event carries its full payload
 * (keyword events hold the whole buffer, not a delta).
 */
export function reduce(state: ConsoleState, msg: ServerMessage): ConsoleState {
  switch (msg.type) {
    case "ack": {
      const next: ConsoleState = {
        ...state,
        pending: state.pending === msg.of ? null : state.pending,
      };
      switch (msg.of) {
        case "hello":
          return { ...next, connection: "connected", connectionDetail: "" };
        case "start":
          return { ...next, runState: "interpreting", notice: "" };
        case "stop":
          return { ...next, runState: "idle" };
        case "reset":
          // the engine confirmed its buffers are gone; clear the mirror
          return {
            ...next,
            runState: "idle",
            prediction: null,
            keywords: [],
            sentence: null,
            caption: "",
            notice: "",
          };
        default:
          return next;
      }
    }
    case "prediction":
      return {
        ...state,
        prediction: { t: msg.t, label: msg.label, confidence: msg.confidence },
      };
    case "keyword":
      return { ...state, keywords: [...msg.keywords] };
    case "sentence":
      return {
        ...state,
        sentence: { text: msg.text, matched: msg.matched },
        caption: msg.text,
      };
    case "error":
      if (msg.code === "version") {
        return {
          ...state,
          connection: "failed",
          connectionDetail: `engine speaks an incompatible protocol: ${msg.message}`,
        };
      }
      if (msg.code === "empty_keywords") {
        return { ...state, notice: "nothing to say yet: no keywords detected" };
      }
      return { ...state, notice: `${msg.code}: ${msg.message}` };
  }
}
