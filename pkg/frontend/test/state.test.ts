import { describe, expect, it } from "vitest";

import type { ServerMessage } from "../src/protocol.js";
import {
  initialState,
  recordLine,
  reduce,
  type ConsoleState,
} from "../src/state.js";

const keywordEvent: ServerMessage = {
  type: "keyword",
  t: 8151,
  label: "blood",
  keywords: ["blood"],
};

describe("reducer", () => {
  it("starts disconnected with an empty view", () => {
    const s = initialState();
    expect(s.connection).toBe("disconnected");
    expect(s.keywords).toEqual([]);
    expect(s.caption).toBe("");
    expect(s.pending).toBeNull();
  });

  it("treats the hello ack as the moment of connection", () => {
    const s = reduce(initialState(), { type: "ack", of: "hello" });
    expect(s.connection).toBe("connected");
  });

  it("flips the run-state on start/stop acks, not before", () => {
    let s: ConsoleState = { ...initialState(), pending: "start" };
    s = reduce(s, { type: "ack", of: "start" });
    expect(s.runState).toBe("interpreting");
    expect(s.pending).toBeNull();
    s = { ...s, pending: "stop" };
    s = reduce(s, { type: "ack", of: "stop" });
    expect(s.runState).toBe("idle");
  });

  it("clears pending only for the matching ack", () => {
    const s = reduce(
      { ...initialState(), pending: "generate" },
      { type: "ack", of: "start" },
    );
    expect(s.pending).toBe("generate");
  });

  it("keeps the keyword chips as a mirror of the event snapshot", () => {
    let s = reduce(initialState(), keywordEvent);
    expect(s.keywords).toEqual(["blood"]);
    s = reduce(s, {
      type: "keyword",
      t: 9000,
      label: "pain",
      keywords: ["blood", "pain"],
    });
    expect(s.keywords).toEqual(["blood", "pain"]);
  });

  it("renders the same view when the same event is applied twice", () => {
    const once = reduce(initialState(), keywordEvent);
    const twice = reduce(once, keywordEvent);
    expect(twice).toEqual(once);
  });

  it("clears chips, caption and prediction on a reset ack", () => {
    let s = reduce(initialState(), keywordEvent);
    s = reduce(s, { type: "sentence", t: 9042, text: "I am bleeding.", matched: true });
    s = reduce(s, {
      type: "prediction",
      t: 1,
      label: "blood",
      confidence: 0.9,
      window_full: true,
    });
    s = reduce({ ...s, pending: "reset" }, { type: "ack", of: "reset" });
    expect(s.keywords).toEqual([]);
    expect(s.caption).toBe("");
    expect(s.sentence).toBeNull();
    expect(s.prediction).toBeNull();
    expect(s.runState).toBe("idle");
  });

  it("updates the live prediction meter", () => {
    const s = reduce(initialState(), {
      type: "prediction",
      t: 957,
      label: "blood",
      confidence: 0.93,
      window_full: true,
    });
    expect(s.prediction).toEqual({ t: 957, label: "blood", confidence: 0.93 });
  });

  it("sets the caption overlay from sentence events", () => {
    const s = reduce(initialState(), {
      type: "sentence",
      t: 9042,
      text: "I am bleeding.",
      matched: true,
    });
    expect(s.caption).toBe("I am bleeding.");
    expect(s.sentence).toEqual({ text: "I am bleeding.", matched: true });
  });

  it("marks the connection failed on a version error", () => {
    const s = reduce(initialState(), {
      type: "error",
      code: "version",
      message: "protocol 9 not supported (engine speaks 1)",
    });
    expect(s.connection).toBe("failed");
    expect(s.connectionDetail).toContain("incompatible");
    expect(s.connectionDetail).toContain("protocol 9 not supported");
  });

  it("surfaces empty keywords gently", () => {
    const s = reduce(initialState(), {
      type: "error",
      code: "empty_keywords",
      message: "no keywords detected yet",
    });
    expect(s.notice).toContain("nothing to say yet");
    expect(s.connection).toBe("disconnected"); // untouched
  });

  it("reports other errors as notices without breaking the view", () => {
    const before = reduce(initialState(), keywordEvent);
    const s = reduce(before, {
      type: "error",
      code: "timestamp",
      message: "timestamp 90 before previous 120",
    });
    expect(s.notice).toBe("timestamp: timestamp 90 before previous 120");
    expect(s.keywords).toEqual(["blood"]);
  });

  it("records raw lines in arrival order", () => {
    let s = initialState();
    s = recordLine(s, "a");
    s = recordLine(s, "b");
    expect(s.serverLog).toEqual(["a", "b"]);
  });
});
