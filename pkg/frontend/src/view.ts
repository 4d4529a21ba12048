// DOM rendering. One render function paints the whole console from the
// state; no incremental bookkeeping, the state is small enough to redraw.

import type { ControlAction } from "./protocol.js";
import type { ConsoleState } from "./state.js";

export interface ViewHandles {
  root: HTMLElement;
  onControl: (action: ControlAction) => void;
  onConnect: () => void;
  onCamera: (on: boolean) => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  if (text) node.textContent = text;
  return node;
}

export function render(state: ConsoleState, handles: ViewHandles): void {
  const { root } = handles;
  root.textContent = "";

  const status = el("div", "status");
  status.append(
    el("span", `pill conn-${state.connection}`, `engine: ${state.connection}`),
    el("span", `pill cam-${state.camera}`, `camera: ${state.camera}`),
    el("span", "pill", `state: ${state.runState}`),
  );
  if (state.connectionDetail)
    status.append(el("span", "detail", state.connectionDetail));
  if (state.cameraDetail) status.append(el("span", "detail", state.cameraDetail));
  root.append(status);

  const buttons = el("div", "controls");
  const connectBtn = el("button", "connect", "connect");
  connectBtn.onclick = () => handles.onConnect();
  buttons.append(connectBtn);
  const camBtn = el(
    "button",
    "camera",
    state.camera === "on" ? "camera off" : "camera on",
  );
  camBtn.onclick = () => handles.onCamera(state.camera !== "on");
  buttons.append(camBtn);
  for (const action of ["start", "stop", "generate", "reset"] as const) {
    const b = el("button", `control-${action}`, action);
    b.disabled = state.connection !== "connected" || state.pending !== null;
    b.onclick = () => handles.onControl(action);
    buttons.append(b);
  }
  root.append(buttons);

  const live = el("div", "live");
  if (state.prediction) {
    live.append(
      el(
        "span",
        "prediction",
        `${state.prediction.label} (${(state.prediction.confidence * 100).toFixed(0)}%)`,
      ),
    );
    const meter = document.createElement("meter");
    meter.min = 0;
    meter.max = 1;
    meter.value = state.prediction.confidence;
    live.append(meter);
  }
  root.append(live);

  const chips = el("ul", "keywords");
  for (const word of state.keywords) chips.append(el("li", "chip", word));
  root.append(chips);

  if (state.caption) root.append(el("div", "caption", state.caption));
  if (state.notice) root.append(el("div", "notice", state.notice));
}
