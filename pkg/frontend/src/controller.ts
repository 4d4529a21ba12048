// Orchestration: one controller owns the connection, the camera source and
// the view state. All state changes flow through the reducer; the controller
// itself never invents pipeline results, it only forwards frames up and
// engine events down.

import type { LandmarkExtractor } from "./extractor.js";
import { flattenLandmarks, type LandmarkSet } from "./landmarks.js";
import {
  DEFAULT_LANDMARK_COUNT,
} from "./landmarks.js";
import {
  encodeControl,
  encodeFrame,
  encodeHello,
  parseServerLine,
  type ControlAction,
} from "./protocol.js";
import {
  initialState,
  recordLine,
  reduce,
  type ConsoleState,
} from "./state.js";
import type { Transport, TransportFactory } from "./transport.js";

export interface ControllerOptions {
  transport: TransportFactory;
  extractor: LandmarkExtractor;
  landmarkCount?: number;
  vocabulary?: readonly string[];
  /** event-time source in milliseconds; defaults to Date.now */
  now?: () => number;
  /** optional speech output, called with each sentence's text */
  speak?: (text: string) => void;
  /** view notification; called after every state change */
  onChange?: (state: ConsoleState) => void;
  /** sink for malformed server lines; defaults to console.warn */
  onGarbage?: (line: string) => void;
}

export class ConsoleController {
  private readonly options: ControllerOptions;
  private readonly landmarkCount: number;
  private transport: Transport | null = null;
  private stateValue: ConsoleState = initialState();

  constructor(options: ControllerOptions) {
    this.options = options;
    this.landmarkCount = options.landmarkCount ?? DEFAULT_LANDMARK_COUNT;
  }

  get state(): ConsoleState {
    return this.stateValue;
  }

  private setState(next: ConsoleState): void {
    this.stateValue = next;
    this.options.onChange?.(next);
  }

  // --- connection -------------------------------------------------------

  connect(url: string): void {
    if (this.transport !== null) this.disconnect();
    this.setState({
      ...this.stateValue,
      connection: "connecting",
      connectionDetail: "",
    });
    this.transport = this.options.transport(url, {
      onOpen: () => {
        // connection counts as established only once the hello is acked
        this.transport?.send(
          encodeHello({
            landmarkCount: this.landmarkCount,
            vocabulary: this.options.vocabulary,
          }),
        );
      },
      onLine: (line) => this.handleLine(line),
      onClose: (detail) => {
        const wasConnected = this.stateValue.connection === "connected";
        this.transport = null;
        this.setState({
          ...this.stateValue,
          connection: wasConnected ? "disconnected" : "failed",
          connectionDetail: wasConnected ? "" : detail,
          runState: "idle",
          pending: null,
        });
      },
    });
  }

  disconnect(): void {
    this.transport?.close();
    this.transport = null;
    this.setState({
      ...this.stateValue,
      connection: "disconnected",
      runState: "idle",
      pending: null,
    });
  }

  private handleLine(line: string): void {
    let next = recordLine(this.stateValue, line);
    const msg = parseServerLine(line);
    if (msg === null) {
      // logged, view untouched
      (this.options.onGarbage ?? ((l: string) => console.warn("bad line", l)))(
        line,
      );
      this.setState(next);
      return;
    }
    next = reduce(next, msg);
    this.setState(next);
    if (msg.type === "sentence") this.options.speak?.(msg.text);
  }

  // --- controls -----------------------------------------------------------

  trigger(action: ControlAction): void {
    if (this.stateValue.connection !== "connected" || this.transport === null) {
      this.setState({
        ...this.stateValue,
        notice: `not connected: cannot send ${action}`,
      });
      return;
    }
    if (this.stateValue.pending !== null) {
      this.setState({
        ...this.stateValue,
        notice: `still waiting for ${this.stateValue.pending} to be acknowledged`,
      });
      return;
    }
    this.transport.send(encodeControl(action));
    this.setState({ ...this.stateValue, pending: action, notice: "" });
  }

  // --- camera ---------------------------------------------------------------

  async startCamera(): Promise<void> {
    this.setState({ ...this.stateValue, camera: "starting", cameraDetail: "" });
    try {
      await this.options.extractor.start((set) => this.onLandmarks(set));
    } catch (err) {
      const name = err instanceof Error ? err.name : "";
      const detail = err instanceof Error ? err.message : String(err);
      this.setState({
        ...this.stateValue,
        camera: name === "NotAllowedError" ? "denied" : "failed",
        cameraDetail: detail,
      });
      return;
    }
    this.setState({ ...this.stateValue, camera: "on" });
  }

  stopCamera(): void {
    this.options.extractor.stop();
    this.setState({ ...this.stateValue, camera: "off" });
  }

  private onLandmarks(set: LandmarkSet): void {
    // frames flow only while the engine is interpreting; stop therefore
    // quiesces the stream within one frame interval
    if (
      this.transport === null ||
      this.stateValue.connection !== "connected" ||
      this.stateValue.runState !== "interpreting"
    ) {
      return;
    }
    const coords = flattenLandmarks(set, this.landmarkCount);
    const now = this.options.now ?? Date.now;
    this.transport.send(encodeFrame(now(), coords));
  }
}
