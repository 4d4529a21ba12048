// Round trip over a real WebSocket: a scripted engine stand-in (speaking
// the documented wire protocol) runs inside the test, and the controller
// talks to it through the production transport adapter.

import { afterEach, beforeEach, describe, expect, it } from "vitest";
import { WebSocket, WebSocketServer } from "ws";

import { ConsoleController } from "../src/controller.js";
import { SyntheticExtractor } from "../src/extractor.js";
import { webSocketTransport } from "../src/transport.js";

const IDLE_AFTER_FRAMES = 5;

function scriptedEngine(): Promise<{
  port: number;
  sent: string[];
  close: () => void;
}> {
  const sent: string[] = [];
  const wss = new WebSocketServer({ port: 0 });
  wss.on("connection", (ws) => {
    let frames = 0;
    const reply = (record: Record<string, unknown>) => {
      const line = JSON.stringify(record);
      sent.push(line);
      ws.send(line);
    };
    ws.on("message", (data) => {
      const msg = JSON.parse(data.toString());
      if (msg.type === "hello") {
        reply({ type: "ack", of: "hello" });
      } else if (msg.type === "control") {
        reply({ type: "ack", of: msg.action });
        if (msg.action === "generate") {
          reply({ type: "sentence", t: msg.t ?? 0, text: "I am bleeding.", matched: true });
        }
      } else if (msg.type === "frame") {
        frames += 1;
        reply({
          type: "prediction",
          t: msg.t,
          label: "blood",
          confidence: 0.91,
          window_full: true,
        });
        if (frames === IDLE_AFTER_FRAMES) {
          reply({ type: "keyword", t: msg.t, label: "blood", keywords: ["blood"] });
        }
      }
    });
  });
  return new Promise((resolve) => {
    wss.on("listening", () => {
      const address = wss.address();
      const port = typeof address === "object" && address ? address.port : 0;
      resolve({ port, sent, close: () => wss.close() });
    });
  });
}

async function waitFor(cond: () => boolean, what: string, ms = 4000) {
  const start = Date.now();
  while (!cond()) {
    if (Date.now() - start > ms) throw new Error(`timed out waiting for ${what}`);
    await new Promise((r) => setTimeout(r, 5));
  }
}

describe("live socket round trip", () => {
  let engine: Awaited<ReturnType<typeof scriptedEngine>>;

  beforeEach(async () => {
    engine = await scriptedEngine();
  });

  afterEach(() => {
    engine.close();
  });

  it("streams frames and renders engine events over the wire", async () => {
    const extractor = new SyntheticExtractor({ seed: 3, intervalMs: 5 });
    const controller = new ConsoleController({
      transport: webSocketTransport(WebSocket as never),
      extractor,
      landmarkCount: 129,
      now: (() => {
        let t = 0;
        return () => (t += 33);
      })(),
    });

    controller.connect(`ws://127.0.0.1:${engine.port}`);
    await waitFor(() => controller.state.connection === "connected", "hello ack");

    controller.trigger("start");
    await waitFor(() => controller.state.runState === "interpreting", "start ack");
    await controller.startCamera();

    await waitFor(() => controller.state.keywords.length > 0, "keyword event");
    controller.stopCamera();
    expect(controller.state.keywords).toEqual(["blood"]);
    expect(controller.state.prediction?.label).toBe("blood");

    controller.trigger("generate");
    await waitFor(() => controller.state.caption !== "", "sentence event");
    expect(controller.state.caption).toBe("I am bleeding.");

    controller.disconnect();
    // the console displayed exactly what the engine sent, nothing invented
    expect(controller.state.serverLog).toEqual(engine.sent);
  });

  it("fails visibly when no engine is listening", async () => {
    const controller = new ConsoleController({
      transport: webSocketTransport(WebSocket as never),
      extractor: new SyntheticExtractor(),
    });
    controller.connect("ws://127.0.0.1:1"); // nothing listens on port 1
    await waitFor(() => controller.state.connection === "failed", "failure state");
    expect(controller.state.connectionDetail).not.toBe("");
  });
});
