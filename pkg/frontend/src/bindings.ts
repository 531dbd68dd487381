import { METRIC_NAMES } from "./protocol.js";
import type { ClientFrame, MetricReading } from "./protocol.js";

// Physical surrogates for the headset inputs.  Every protocol input type
// is reachable: arrows cover the four movement commands, Enter stands in
// for a blink (two presses inside the server's 1000 ms pairing window make
// a selection), the bracket keys are the two look gestures, and the metric
// sliders (metricsFrame below) feed the emotion stream.
//
// One key press maps to at most one frame; auto-repeat and unknown keys
// map to none.

/** Frame for one key press, or null when the key means nothing here. */
export function frameForKey(key: string, repeat = false): ClientFrame | null {
  if (repeat) return null; // held keys are still one physical gesture
  switch (key) {
    case "ArrowLeft":
      return { type: "command", payload: { name: "Left" } };
    case "ArrowRight":
      return { type: "command", payload: { name: "Right" } };
    case "ArrowUp":
      return { type: "command", payload: { name: "Pull" } };
    case "ArrowDown":
      return { type: "command", payload: { name: "Push" } };
    case "Enter":
      return { type: "expression", payload: { name: "Blink" } };
    case "[":
      return { type: "motor_imagery", payload: { kind: "LookLeft" } };
    case "]":
      return { type: "motor_imagery", payload: { kind: "LookRight" } };
    default:
      return null;
  }
}

const clamp01 = (v: number): number => Math.min(1, Math.max(0, v));

/** One emotion frame from the slider panel; values are clamped into [0, 1]. */
export function metricsFrame(values: Partial<MetricReading>): ClientFrame {
  const payload = {} as MetricReading;
  for (const name of METRIC_NAMES) {
    payload[name] = clamp01(values[name] ?? 0);
  }
  return { type: "emotion_metrics", payload };
}

/** All keys frameForKey recognizes, for help text and tests. */
export const BOUND_KEYS = ["ArrowLeft", "ArrowRight", "ArrowUp", "ArrowDown", "Enter", "[", "]"] as const;
