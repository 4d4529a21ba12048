// Landmark sources. The controller only knows the LandmarkExtractor
// interface; the camera-backed implementation lives in camera.ts and this
// file provides a deterministic synthetic source used by tests and by the
// demo page when no camera or detector is available.

import {
  HAND_POINTS,
  POSE_POINTS,
  type LandmarkPoint,
  type LandmarkSet,
} from "./landmarks.js";

export interface LandmarkExtractor {
  /** Begin emitting landmark sets; resolves once the source is running. */
  start(onFrame: (set: LandmarkSet) => void): Promise<void>;
  /** Cease emission; no onFrame calls after this returns. */
  stop(): void;
}

export interface SyntheticExtractorOptions {
  seed?: number;
  intervalMs?: number;
  /** scheduler injection point for tests; defaults to setInterval */
  schedule?: (fn: () => void, ms: number) => () => void;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function defaultSchedule(fn: () => void, ms: number): () => void {
  const id = setInterval(fn, ms);
  return () => clearInterval(id);
}

/**
 * Deterministic stand-in for a real detector: emits a slowly drifting pose
 * and two circling hands at a fixed cadence. Same seed, same sequence.
 */
export class SyntheticExtractor implements LandmarkExtractor {
  private readonly rand: () => number;
  private readonly intervalMs: number;
  private readonly schedule: (fn: () => void, ms: number) => () => void;
  private cancel: (() => void) | null = null;
  private step = 0;

  constructor(options: SyntheticExtractorOptions = {}) {
    this.rand = mulberry32(options.seed ?? 0);
    this.intervalMs = options.intervalMs ?? 33;
    this.schedule = options.schedule ?? defaultSchedule;
  }

  next(): LandmarkSet {
    const phase = this.step * 0.12;
    this.step += 1;
    const jitter = () => (this.rand() - 0.5) * 0.01;
    const part = (count: number, cx: number, cy: number, r: number) => {
      const points: LandmarkPoint[] = [];
      for (let i = 0; i < count; i++) {
        const a = phase + (i * 2 * Math.PI) / count;
        points.push({
          x: cx + r * Math.cos(a) + jitter(),
          y: cy + r * Math.sin(a) + jitter(),
        });
      }
      return points;
    };
    return {
      pose: part(POSE_POINTS, 0.5, 0.55, 0.18),
      leftHand: part(HAND_POINTS, 0.3, 0.4, 0.05),
      rightHand: part(HAND_POINTS, 0.7, 0.4, 0.05),
    };
  }

  async start(onFrame: (set: LandmarkSet) => void): Promise<void> {
    this.stop();
    this.cancel = this.schedule(() => onFrame(this.next()), this.intervalMs);
  }

  stop(): void {
    if (this.cancel !== null) {
      this.cancel();
      this.cancel = null;
    }
  }
}
