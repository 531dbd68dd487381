import type { FocusRef, Snapshot } from "./protocol.js";
import type { ViewState } from "./state.js";

// Pure snapshot -> HTML string view, kept DOM-free so it can be tested
// anywhere.  The page shell (main.ts) just drops the result into a
// container and wires events.
//
// Ring geometry: slot i sits at 45 + 90*i degrees on the inner ring and at
// 90*i degrees on the outer one, so the eight keys interleave around the
// central space key.

export const INNER_ANGLES = [45, 135, 225, 315] as const;
export const OUTER_ANGLES = [0, 90, 180, 270] as const;

const INNER_RADIUS = 72; // px from stage center
const OUTER_RADIUS = 132;

const esc = (s: string): string =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");

const focusedRing = (focus: FocusRef, ring: "inner" | "outer", slot: number): boolean =>
  focus.kind === "ring" && focus.ring === ring && focus.slot === slot;

function ringKey(label: string, ring: "inner" | "outer", slot: number, focus: FocusRef): string {
  const angle = ring === "inner" ? INNER_ANGLES[slot] : OUTER_ANGLES[slot];
  const radius = ring === "inner" ? INNER_RADIUS : OUTER_RADIUS;
  const cls = focusedRing(focus, ring, slot) ? "key focused" : "key";
  const place = `transform: rotate(${angle}deg) translate(${radius}px) rotate(-${angle}deg)`;
  return (
    `<div class="${cls}" data-ring="${ring}" data-slot="${slot}" style="${place}">` +
    `${esc(label)}</div>`
  );
}

function stage(snap: Snapshot): string {
  const [inner, outer] = snap.layout.rows;
  const keys: string[] = [];
  const centerCls = snap.focus.kind === "center" ? "key center focused" : "key center";
  keys.push(`<div class="${centerCls}" data-key="space">&#x2423;</div>`);
  for (let slot = 0; slot < 4; slot++) keys.push(ringKey(inner[slot], "inner", slot, snap.focus));
  for (let slot = 0; slot < 4; slot++) keys.push(ringKey(outer[slot], "outer", slot, snap.focus));
  return `<div class="stage" data-page="${snap.layout.page}">\n${keys.join("\n")}\n</div>`;
}

function panel(name: string, title: string, words: string[], active: boolean, focus: FocusRef): string {
  const items = words.map((w, i) => {
    const hit = active && focus.kind === "item" && focus.index === i;
    return `<li class="${hit ? "item focused" : "item"}">${esc(w)}</li>`;
  });
  const cls = active ? `panel ${name} active` : `panel ${name}`;
  return `<div class="${cls}"><h2>${esc(title)}</h2><ul>\n${items.join("\n")}\n</ul></div>`;
}

function statusBar(snap: Snapshot): string {
  const { wpm, cpm } = snap.metrics;
  return (
    `<div class="status">` +
    `<span class="emotion" data-emotion="${esc(snap.emotion)}">emotion: ${esc(snap.emotion)}</span>` +
    `<span class="rates">${wpm.toFixed(2)} wpm &middot; ${cpm.toFixed(2)} cpm</span>` +
    `<span class="seq">#${snap.seq}</span>` +
    `</div>`
  );
}

/** Render the whole view; with no snapshot yet, just the waiting shell. */
export function render(view: ViewState): string {
  const parts: string[] = [];
  if (view.banner !== null) {
    parts.push(`<div class="banner" role="alert">${esc(view.banner)}</div>`);
  }
  const snap = view.snapshot;
  if (snap === null) {
    parts.push(`<div class="waiting">waiting for the session service&hellip;</div>`);
    return parts.join("\n");
  }
  parts.push(`<div class="textbar" data-section="${esc(snap.section)}">${esc(snap.text)}&#x2038;</div>`);
  parts.push(`<div class="board">`);
  parts.push(panel("predictions", "predictions", snap.predictions, snap.section === "predictions", snap.focus));
  parts.push(stage(snap));
  parts.push(
    panel("helping-verbs", "helping verbs", snap.helping_verbs, snap.section === "helping_verbs", snap.focus),
  );
  parts.push(`</div>`);
  parts.push(statusBar(snap));
  return parts.join("\n");
}
