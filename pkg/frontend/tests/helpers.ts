import type { FocusRef, Snapshot } from "../src/protocol.js";

export const CENTER: FocusRef = { kind: "center", ring: null, slot: null, index: null };

export const onRing = (ring: "inner" | "outer", slot: number): FocusRef => ({
  kind: "ring",
  ring,
  slot,
  index: null,
});

export const onItem = (index: number): FocusRef => ({ kind: "item", ring: null, slot: null, index });

/** A plausible handshake snapshot; fields overridable per test. */
export function snapshot(overrides: Partial<Snapshot> = {}): Snapshot {
  return {
    type: "snapshot",
    seq: 1,
    layout: {
      rows: [
        ["e", "t", "a", "o"],
        ["i", "n", "←", "more"],
      ],
      page: 0,
      context: null,
    },
    focus: CENTER,
    section: "keyboard",
    text: "",
    predictions: ["the", "to", "and"],
    helping_verbs: ["is", "are", "was"],
    emotion: "calmness",
    metrics: { wpm: 0, cpm: 0 },
    ...overrides,
  };
}
