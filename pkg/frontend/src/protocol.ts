// Wire types for the session-service WebSocket protocol.
//
// The server speaks single JSON objects in both directions: clients send
// `{type, payload}` input frames, the server answers every applied frame
// (and the initial handshake) with a full `snapshot` frame, or an `error`
// frame right before it closes the socket.

export type CommandName = "Left" | "Right" | "Pull" | "Push";
export type ImageryKind = "LookLeft" | "LookRight";

export const METRIC_NAMES = [
  "engagement",
  "excitement",
  "stress",
  "relaxation",
  "interest",
  "focus",
] as const;

export type MetricName = (typeof METRIC_NAMES)[number];
export type MetricReading = Record<MetricName, number>;

export type ClientFrame =
  | { type: "command"; payload: { name: CommandName } }
  | { type: "expression"; payload: { name: string } }
  | { type: "motor_imagery"; payload: { kind: ImageryKind } }
  | { type: "emotion_metrics"; payload: MetricReading };

export interface Layout {
  rows: [string[], string[]]; // inner ring, outer ring; 4 labels each
  page: number;
  context: string | null;
}

export interface FocusRef {
  kind: "center" | "ring" | "item";
  ring: "inner" | "outer" | null;
  slot: number | null;
  index: number | null;
}

export interface Snapshot {
  type: "snapshot";
  seq: number;
  layout: Layout;
  focus: FocusRef;
  section: string;
  text: string;
  predictions: string[];
  helping_verbs: string[];
  emotion: string;
  metrics: { wpm: number; cpm: number };
}

export interface ErrorFrame {
  type: "error";
  message: string;
}

export type ServerFrame = Snapshot | ErrorFrame;

export class ProtocolError extends Error {}

function isStringArray(v: unknown): v is string[] {
  return Array.isArray(v) && v.every((x) => typeof x === "string");
}

function checkLayout(v: unknown): Layout {
  const o = v as Layout;
  if (
    typeof o !== "object" ||
    o === null ||
    !Array.isArray(o.rows) ||
    o.rows.length !== 2 ||
    !o.rows.every((row) => isStringArray(row) && row.length === 4) ||
    typeof o.page !== "number"
  ) {
    throw new ProtocolError("bad layout");
  }
  return o;
}

function checkFocus(v: unknown): FocusRef {
  const o = v as FocusRef;
  if (
    typeof o !== "object" ||
    o === null ||
    (o.kind !== "center" && o.kind !== "ring" && o.kind !== "item")
  ) {
    throw new ProtocolError("bad focus");
  }
  if (o.kind === "ring" && ((o.ring !== "inner" && o.ring !== "outer") || typeof o.slot !== "number")) {
    throw new ProtocolError("bad focus");
  }
  if (o.kind === "item" && typeof o.index !== "number") {
    throw new ProtocolError("bad focus");
  }
  return o;
}

/** Parse one server message, throwing ProtocolError on anything malformed. */
export function parseServerFrame(raw: string): ServerFrame {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    throw new ProtocolError("frame is not JSON");
  }
  if (typeof data !== "object" || data === null || Array.isArray(data)) {
    throw new ProtocolError("frame must be an object");
  }
  const frame = data as Record<string, unknown>;
  if (frame.type === "error") {
    if (typeof frame.message !== "string") throw new ProtocolError("bad error frame");
    return { type: "error", message: frame.message };
  }
  if (frame.type !== "snapshot") {
    throw new ProtocolError(`unknown frame type: ${String(frame.type)}`);
  }
  if (typeof frame.seq !== "number" || !Number.isInteger(frame.seq) || frame.seq < 0) {
    throw new ProtocolError("bad seq");
  }
  if (typeof frame.text !== "string" || typeof frame.section !== "string") {
    throw new ProtocolError("bad snapshot");
  }
  if (!isStringArray(frame.predictions) || !isStringArray(frame.helping_verbs)) {
    throw new ProtocolError("bad snapshot");
  }
  if (typeof frame.emotion !== "string") throw new ProtocolError("bad snapshot");
  const metrics = frame.metrics as { wpm?: unknown; cpm?: unknown } | null;
  if (
    typeof metrics !== "object" ||
    metrics === null ||
    typeof metrics.wpm !== "number" ||
    typeof metrics.cpm !== "number"
  ) {
    throw new ProtocolError("bad metrics");
  }
  return {
    type: "snapshot",
    seq: frame.seq,
    layout: checkLayout(frame.layout),
    focus: checkFocus(frame.focus),
    section: frame.section,
    text: frame.text,
    predictions: frame.predictions,
    helping_verbs: frame.helping_verbs,
    emotion: frame.emotion,
    metrics: { wpm: metrics.wpm, cpm: metrics.cpm },
  };
}
