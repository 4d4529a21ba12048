export {
  CONTROL_ACTIONS,
  PROTOCOL_VERSION,
  encodeControl,
  encodeFrame,
  encodeHello,
  parseServerLine,
  serverMessageSchema,
} from "./protocol.js";
export type {
  AckMessage,
  ControlAction,
  ErrorMessage,
  KeywordMessage,
  PredictionMessage,
  SentenceMessage,
  ServerMessage,
  StreamConfig,
} from "./protocol.js";
export { initialState, recordLine, reduce } from "./state.js";
export type {
  CameraStatus,
  ConnectionStatus,
  ConsoleState,
  LivePrediction,
  RunState,
} from "./state.js";
export {
  DEFAULT_LANDMARK_COUNT,
  DETECTED_POINTS,
  HAND_POINTS,
  POSE_POINTS,
  flattenLandmarks,
} from "./landmarks.js";
export type { LandmarkPoint, LandmarkSet } from "./landmarks.js";
export { SyntheticExtractor } from "./extractor.js";
export type { LandmarkExtractor } from "./extractor.js";
export { CameraExtractor } from "./camera.js";
export type { Detector } from "./camera.js";
export { webSocketTransport } from "./transport.js";
export type { Transport, TransportEvents, TransportFactory } from "./transport.js";
export { ConsoleController } from "./controller.js";
export type { ControllerOptions } from "./controller.js";
export { browserSpeech } from "./speech.js";
export { render } from "./view.js";
export type { ViewHandles } from "./view.js";
