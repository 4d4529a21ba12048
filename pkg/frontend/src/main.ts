// Browser entry point. Wires the controller to the DOM, choosing the
// synthetic landmark source unless a real detector loader was registered
// (window.loadSignDetector), so the page is usable on machines without a
// camera or a bundled landmark model.

import { CameraExtractor, type Detector } from "./camera.js";
import { SyntheticExtractor } from "./extractor.js";
import { ConsoleController } from "./controller.js";
import { browserSpeech } from "./speech.js";
import { webSocketTransport } from "./transport.js";
import { render } from "./view.js";

declare global {
  interface Window {
    loadSignDetector?: () => Promise<Detector>;
  }
}

export function mount(root: HTMLElement, url: string): ConsoleController {
  const loader = window.loadSignDetector;
  const extractor = loader
    ? new CameraExtractor({ loadDetector: loader })
    : new SyntheticExtractor();

  const controller: ConsoleController = new ConsoleController({
    transport: webSocketTransport(WebSocket),
    extractor,
    speak: browserSpeech() ?? undefined,
    onChange: (state) =>
      render(state, {
        root,
        onConnect: () => controller.connect(url),
        onControl: (action) => controller.trigger(action),
        onCamera: (on) => {
          if (on) void controller.startCamera();
          else controller.stopCamera();
        },
      }),
  });
  controller.connect(url);
  return controller;
}

if (typeof document !== "undefined") {
  const root = document.getElementById("console");
  if (root) {
    const params = new URLSearchParams(location.search);
    mount(root, params.get("ws") ?? "ws://127.0.0.1:8765");
  }
}
