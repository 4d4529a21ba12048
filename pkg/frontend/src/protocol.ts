// Wire protocol: newline-delimited JSON over a WebSocket, one message per
// line. Encoders write keys in a fixed order with compact separators so a
// recorded client stream is byte-stable; parsers are strict and reject
// anything off-contract instead of guessing.

import { z } from "zod";

export const PROTOCOL_VERSION = 1;

export type ControlAction = "start" | "stop" | "generate" | "reset";
export const CONTROL_ACTIONS: readonly ControlAction[] = [
  "start",
  "stop",
  "generate",
  "reset",
];

// ---- client -> engine --------------------------------------------------

export interface StreamConfig {
  /** landmark pairs per frame; a frame carries 2x this many coordinates */
  landmarkCount: number;
  /** optional label list, validated by the engine against its model */
  vocabulary?: readonly string[];
}

export function encodeHello(cfg: StreamConfig): string {
  const record: Record<string, unknown> = {
    type: "hello",
    protocol: PROTOCOL_VERSION,
    f: cfg.landmarkCount,
  };
  if (cfg.vocabulary !== undefined) record.vocabulary = [...cfg.vocabulary];
  return JSON.stringify(record);
}

export function encodeFrame(t: number, coords: ArrayLike<number>): string {
  return JSON.stringify({ type: "frame", t, coords: Array.from(coords) });
}

export function encodeControl(action: ControlAction): string {
  return JSON.stringify({ type: "control", action });
}

// ---- engine -> client --------------------------------------------------

const ackSchema = z.object({
  type: z.literal("ack"),
  of: z.string(),
});

const predictionSchema = z.object({
  type: z.literal("prediction"),
  t: z.number().int(),
  label: z.string(),
  confidence: z.number(),
  window_full: z.boolean(),
});

const keywordSchema = z.object({
  type: z.literal("keyword"),
  t: z.number().int(),
  label: z.string(),
  keywords: z.array(z.string()),
});

const sentenceSchema = z.object({
  type: z.literal("sentence"),
  t: z.number().int(),
  text: z.string(),
  matched: z.boolean(),
});

const errorSchema = z.object({
  type: z.literal("error"),
  code: z.string(),
  message: z.string(),
});

export const serverMessageSchema = z.discriminatedUnion("type", [
  ackSchema,
  predictionSchema,
  keywordSchema,
  sentenceSchema,
  errorSchema,
]);

export type ServerMessage = z.infer<typeof serverMessageSchema>;
export type AckMessage = z.infer<typeof ackSchema>;
export type PredictionMessage = z.infer<typeof predictionSchema>;
export type KeywordMessage = z.infer<typeof keywordSchema>;
export type SentenceMessage = z.infer<typeof sentenceSchema>;
export type ErrorMessage = z.infer<typeof errorSchema>;

/**
 * Parse one server line. Returns null for anything malformed (bad JSON,
 * unknown type, missing or mistyped fields); the caller logs and moves on,
 * the view is never affected by garbage.
 */
export function parseServerLine(line: string): ServerMessage | null {
  let record: unknown;
  try {
    record = JSON.parse(line);
  } catch {
    return null;
  }
  const result = serverMessageSchema.safeParse(record);
  return result.success ? result.data : null;
}
