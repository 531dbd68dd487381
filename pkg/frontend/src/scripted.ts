import type { ClientFrame, CommandName, Snapshot } from "./protocol.js";

// Scripted input: drives a live session from a target string instead of a
// human, planning each gesture from the latest snapshot only — exactly
// what a user at the real page sees.  Also replays recorded session logs
// as demo input (frameForLoggedEvent).

const BACKSPACE = "←"; // the engine's backspace label
const MORE = "more"; // pager key, outer slot 3

type Pos = string; // "c" | "i0".."i3" | "o0".."o3"

const posOf = (snap: Snapshot): Pos => {
  const f = snap.focus;
  if (f.kind !== "ring") return "c";
  return (f.ring === "inner" ? "i" : "o") + String(f.slot);
};

// Focus moves mirror the server's keyboard walk: Pull steps outward
// (center -> inner slot 0 -> outer, same slot), Push steps back inward,
// Left/Right rotate within a ring.  Edge moves change nothing and are
// never worth queueing, so they are simply not edges here.
function neighbors(pos: Pos): Array<[CommandName, Pos]> {
  if (pos === "c") return [["Pull", "i0"]];
  const ring = pos[0];
  const slot = Number(pos[1]);
  const out: Array<[CommandName, Pos]> = [
    ["Left", ring + String((slot + 3) % 4)],
    ["Right", ring + String((slot + 1) % 4)],
  ];
  if (ring === "i") {
    out.push(["Pull", "o" + String(slot)]);
    out.push(["Push", "c"]);
  } else {
    out.push(["Push", "i" + String(slot)]);
  }
  return out;
}

/** First command on a shortest move path from `from` to `to`. */
export function firstMoveToward(from: Pos, to: Pos): CommandName {
  if (from === to) throw new Error("already there");
  const prev = new Map<Pos, [Pos, CommandName]>();
  const queue: Pos[] = [from];
  prev.set(from, [from, "Left"]);
  while (queue.length > 0) {
    const cur = queue.shift()!;
    for (const [cmd, nxt] of neighbors(cur)) {
      if (prev.has(nxt)) continue;
      prev.set(nxt, [cur, cmd]);
      if (nxt === to) {
        // walk back to the move leaving `from`
        let at = to;
        for (;;) {
          const [back, move] = prev.get(at)!;
          if (back === from) return move;
          at = back;
        }
      }
      queue.push(nxt);
    }
  }
  throw new Error(`no path ${from} -> ${to}`);
}

const command = (name: CommandName): ClientFrame => ({ type: "command", payload: { name } });
const BLINK: ClientFrame = { type: "expression", payload: { name: "Blink" } };

function keyPos(snap: Snapshot, label: string): Pos | null {
  const [inner, outer] = snap.layout.rows;
  let slot = inner.indexOf(label);
  if (slot >= 0) return "i" + String(slot);
  slot = outer.indexOf(label);
  if (slot >= 0) return "o" + String(slot);
  return null;
}

/**
 * The next gesture(s) needed to push snap.text toward target: one move
 * command, or a blink pair when the wanted key is already focused.  Empty
 * once the text matches.
 */
export function stepFrames(snap: Snapshot, target: string): ClientFrame[] {
  if (snap.text === target) return [];
  if (snap.section !== "keyboard") return [{ type: "motor_imagery", payload: { kind: "LookLeft" } }];
  // type the next character while on track, otherwise back out one
  const wanted = target.startsWith(snap.text) ? target[snap.text.length] : BACKSPACE;
  if (wanted !== " " && wanted !== BACKSPACE && !/^[a-z]$/.test(wanted)) {
    throw new Error(`cannot type ${JSON.stringify(wanted)}`);
  }
  const here = posOf(snap);
  const goal = wanted === " " ? "c" : (keyPos(snap, wanted) ?? keyPos(snap, MORE)!);
  if (here === goal) return [BLINK, BLINK];
  return [command(firstMoveToward(here, goal))];
}

export interface ScriptIo {
  send(frame: ClientFrame): void;
  nextSnapshot(): Promise<Snapshot>;
}

export interface ScriptReport {
  text: string;
  framesSent: number;
  latenciesMs: number[]; // one send -> snapshot round trip per frame
}

/**
 * Type `target` over a live connection, one frame per server round trip.
 * The caller feeds it the handshake and every later snapshot through `io`.
 */
export async function typeText(io: ScriptIo, target: string, maxFrames = 600): Promise<ScriptReport> {
  let snap = await io.nextSnapshot();
  const latencies: number[] = [];
  let sent = 0;
  while (snap.text !== target) {
    const frames = stepFrames(snap, target);
    for (const frame of frames) {
      if (sent >= maxFrames) {
        throw new Error(`gave up after ${sent} frames with text ${JSON.stringify(snap.text)}`);
      }
      const t0 = Date.now();
      io.send(frame);
      snap = await io.nextSnapshot();
      latencies.push(Date.now() - t0);
      sent += 1;
    }
  }
  return { text: snap.text, framesSent: sent, latenciesMs: latencies };
}

interface LoggedEvent {
  kind: string;
  payload: Record<string, unknown>;
}

/** Input frame for one recorded session event; null for output events. */
export function frameForLoggedEvent(event: LoggedEvent): ClientFrame | null {
  switch (event.kind) {
    case "command":
    case "expression":
    case "motor_imagery":
      return { type: event.kind, payload: event.payload } as ClientFrame;
    case "emotion_update":
      return { type: "emotion_metrics", payload: event.payload.metrics } as ClientFrame;
    default:
      return null;
  }
}
