// Camera-backed landmark source. The actual pose/hand model is injected as
// a detect function (any in-browser landmark model that reports normalized
// x/y points fits), so this module owns only the webcam lifecycle and the
// frame loop. Permission and loader failures surface through the returned
// promise; nothing fails silently.

import type { LandmarkExtractor } from "./extractor.js";
import type { LandmarkSet } from "./landmarks.js";

export type Detector = (video: HTMLVideoElement, tMs: number) => LandmarkSet;

export interface CameraExtractorOptions {
  /** loads the detector; typically wraps an off-the-shelf landmark model */
  loadDetector: () => Promise<Detector>;
  /** camera constraints; defaults to a modest front-facing request */
  constraints?: MediaStreamConstraints;
  video?: HTMLVideoElement;
}

export class CameraExtractor implements LandmarkExtractor {
  private readonly options: CameraExtractorOptions;
  private stream: MediaStream | null = null;
  private running = false;

  constructor(options: CameraExtractorOptions) {
    this.options = options;
  }

  async start(onFrame: (set: LandmarkSet) => void): Promise<void> {
    const detector = await this.options.loadDetector();
    this.stream = await navigator.mediaDevices.getUserMedia(
      this.options.constraints ?? { video: { width: 640, height: 480 } },
    );
    const video = this.options.video ?? document.createElement("video");
    video.srcObject = this.stream;
    video.muted = true;
    await video.play();

    this.running = true;
    const tick = () => {
      if (!this.running) return;
      if (video.readyState >= 2) {
        onFrame(detector(video, performance.now()));
      }
      requestAnimationFrame(tick);
    };
    requestAnimationFrame(tick);
  }

  stop(): void {
    this.running = false;
    if (this.stream !== null) {
      for (const track of this.stream.getTracks()) track.stop();
      this.stream = null;
    }
  }
}
