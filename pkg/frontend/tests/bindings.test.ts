import { describe, expect, it } from "vitest";

import { BOUND_KEYS, frameForKey, metricsFrame } from "../src/bindings.js";
import { METRIC_NAMES } from "../src/protocol.js";

describe("frameForKey", () => {
  it.each([
    ["ArrowLeft", "Left"],
    ["ArrowRight", "Right"],
    ["ArrowUp", "Pull"],
    ["ArrowDown", "Push"],
  ])("%s maps to the %s command", (key, name) => {
    expect(frameForKey(key)).toEqual({ type: "command", payload: { name } });
  });

  it("Enter maps to a single blink frame", () => {
    expect(frameForKey("Enter")).toEqual({ type: "expression", payload: { name: "Blink" } });
  });

  it("brackets map to the look gestures", () => {
    expect(frameForKey("[")).toEqual({ type: "motor_imagery", payload: { kind: "LookLeft" } });
    expect(frameForKey("]")).toEqual({ type: "motor_imagery", payload: { kind: "LookRight" } });
  });

  it("ignores unbound keys", () => {
    for (const key of ["a", " ", "Escape", "Shift", "F5", "Tab"]) {
      expect(frameForKey(key)).toBeNull();
    }
  });

  it("ignores key auto-repeat", () => {
    expect(frameForKey("ArrowLeft", true)).toBeNull();
    expect(frameForKey("Enter", true)).toBeNull();
  });

  it("returns a fresh frame object per press", () => {
    const a = frameForKey("ArrowUp")!;
    const b = frameForKey("ArrowUp")!;
    expect(a).not.toBe(b);
    expect(a.payload).not.toBe(b.payload);
  });

  it("reaches every protocol input type across the bindings", () => {
    const types = new Set(BOUND_KEYS.map((key) => frameForKey(key)!.type));
    types.add(metricsFrame({}).type);
    expect(types).toEqual(new Set(["command", "expression", "motor_imagery", "emotion_metrics"]));
  });
});

describe("metricsFrame", () => {
  it("carries all six metrics", () => {
    const frame = metricsFrame({ engagement: 0.25, stress: 1 });
    expect(frame.type).toBe("emotion_metrics");
    expect(Object.keys(frame.payload).sort()).toEqual([...METRIC_NAMES].sort());
  });

  it("fills missing sliders with zero and clamps into [0, 1]", () => {
    const frame = metricsFrame({ excitement: 1.7, focus: -0.3 });
    const payload = frame.payload as Record<string, number>;
    expect(payload.excitement).toBe(1);
    expect(payload.focus).toBe(0);
    expect(payload.engagement).toBe(0);
    for (const name of METRIC_NAMES) {
      expect(payload[name]).toBeGreaterThanOrEqual(0);
      expect(payload[name]).toBeLessThanOrEqual(1);
    }
  });
});
