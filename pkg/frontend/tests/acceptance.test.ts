// Acceptance gate for the browser client, one printed verdict per
// criterion, same shape as the backend's gate:
//   - round trip: scripted input types "the" against a live session
//     service spawned here, with sub-100ms median input -> snapshot time
//   - ordering: a burst of 100 frames renders with monotone seq and no
//     out-of-order application

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import WebSocket from "ws";
import { afterAll, describe, expect, it } from "vitest";

import { SessionClient, type SocketLike } from "../src/client.js";
import type { ClientFrame, Snapshot } from "../src/protocol.js";
import { typeText } from "../src/scripted.js";
import { ViewStore } from "../src/state.js";
import { snapshot } from "./helpers.js";

const PORT = 8972;

// small models keep the spawned service quick to boot
const CFG = `hidden_size = 24
lm_epochs = 4
vocab_size = 400
seed = 5
retrain_interval = 5
retrain_epochs = 2
`;

function verdict(name: string, problems: string[]): void {
  const ok = problems.length === 0;
  process.stdout.write(`\nacceptance[${name}]: ${ok ? "PASS" : "FAIL"}\n`);
  for (const p of problems) process.stdout.write(`  - ${p}\n`);
  expect(problems).toEqual([]);
}

const median = (xs: number[]): number => {
  const s = [...xs].sort((a, b) => a - b);
  return s.length % 2 === 1 ? s[s.length / 2 | 0] : (s[s.length / 2 - 1] + s[s.length / 2]) / 2;
};

/** Snapshots applied by the store, in application order, as an async feed. */
function snapshotFeed(store: ViewStore): () => Promise<Snapshot> {
  const buffered: Snapshot[] = [];
  const waiting: Array<(s: Snapshot) => void> = [];
  let lastSeq = -1;
  store.subscribe((view) => {
    const snap = view.snapshot;
    if (snap === null || snap.seq === lastSeq) return; // banner-only update
    lastSeq = snap.seq;
    const waiter = waiting.shift();
    if (waiter !== undefined) waiter(snap);
    else buffered.push(snap);
  });
  return () => {
    const snap = buffered.shift();
    if (snap !== undefined) return Promise.resolve(snap);
    return new Promise<Snapshot>((resolve) => waiting.push(resolve));
  };
}

function connectWithRetry(url: string, deadlineMs: number): Promise<WebSocket> {
  return new Promise((resolve, reject) => {
    const started = Date.now();
    const attempt = (): void => {
      const ws = new WebSocket(url);
      ws.once("open", () => resolve(ws));
      ws.once("error", () => {
        ws.terminate();
        if (Date.now() - started > deadlineMs) reject(new Error(`no service at ${url}`));
        else setTimeout(attempt, 250);
      });
    };
    attempt();
  });
}

describe("acceptance", () => {
  let service: ChildProcess | null = null;
  let workDir: string | null = null;

  afterAll(async () => {
    if (service !== null && service.exitCode === null) {
      service.kill("SIGTERM");
      await new Promise((resolve) => service!.once("exit", resolve));
    }
    if (workDir !== null) rmSync(workDir, { recursive: true, force: true });
  });

  it("ui-round-trip: scripted input types 'the' through the live service", async () => {
    const problems: string[] = [];
    workDir = mkdtempSync(join(tmpdir(), "keyboard-ui-"));
    const cfgPath = join(workDir, "tiny.cfg");
    writeFileSync(cfgPath, CFG);
    service = spawn("python3", ["-m", "mindtype", "serve", "--port", String(PORT), "--config", cfgPath], {
      stdio: ["ignore", "inherit", "inherit"],
    });

    const socket = await connectWithRetry(`ws://127.0.0.1:${PORT}/ws`, 30_000);
    const store = new ViewStore();
    const nextSnapshot = snapshotFeed(store); // subscribe before frames arrive
    const client = new SessionClient(socket as unknown as SocketLike, store);
    try {
      const report = await typeText(
        { send: (frame: ClientFrame) => client.sendInput(frame), nextSnapshot },
        "the",
      );
      if (report.text !== "the") problems.push(`final text ${JSON.stringify(report.text)}`);
      if (store.current.snapshot?.text !== "the") {
        problems.push(`rendered text ${JSON.stringify(store.current.snapshot?.text)}`);
      }
      const mid = median(report.latenciesMs);
      if (!(mid < 100)) problems.push(`median input->snapshot latency ${mid.toFixed(1)} ms`);
      if (report.framesSent < 6) problems.push(`implausibly few frames: ${report.framesSent}`);
    } finally {
      client.close();
    }
    verdict("ui-round-trip", problems);
  }, 120_000);

  it("ui-ordering: a 100-frame burst renders monotone with zero out-of-order applications", () => {
    const problems: string[] = [];

    // scripted burst, in arrival order, straight through the client queue
    const handlers: Array<(ev: { data: unknown }) => void> = [];
    const socket: SocketLike = {
      send: () => {},
      close: () => {},
      addEventListener: ((type: string, fn: (ev: { data: unknown }) => void) => {
        if (type === "message") handlers.push(fn);
      }) as SocketLike["addEventListener"],
    };
    const store = new ViewStore();
    const rendered: number[] = [];
    store.subscribe((view) => rendered.push(view.snapshot!.seq));
    new SessionClient(socket, store);

    const frames = Array.from({ length: 100 }, (_, i) => snapshot({ seq: i + 1, text: "x".repeat(i) }));
    for (const frame of frames) for (const fn of handlers) fn({ data: JSON.stringify(frame) });

    if (store.current.applied !== 100) problems.push(`applied ${store.current.applied} of 100`);
    if (store.current.snapshot?.seq !== 100) problems.push(`final seq ${store.current.snapshot?.seq}`);
    for (let i = 1; i < rendered.length; i++) {
      if (rendered[i] < rendered[i - 1]) {
        problems.push(`rendered seq fell from ${rendered[i - 1]} to ${rendered[i]}`);
        break;
      }
    }

    // same burst shuffled: stale frames must be dropped, never applied late
    const shuffled = new ViewStore();
    const applied: number[] = [];
    shuffled.subscribe((view) => applied.push(view.snapshot!.seq));
    const order = [...frames];
    let seed = 2026;
    for (let i = order.length - 1; i > 0; i--) {
      seed = (seed * 1103515245 + 12345) % 2147483648;
      const j = seed % (i + 1);
      [order[i], order[j]] = [order[j], order[i]];
    }
    for (const frame of order) shuffled.apply(frame);
    const outOfOrder = applied.filter((seq, i) => i > 0 && seq <= applied[i - 1]);
    if (outOfOrder.length > 0) problems.push(`${outOfOrder.length} out-of-order applications`);
    if (shuffled.current.applied + shuffled.current.dropped !== 100) {
      problems.push("shuffled burst lost frames");
    }

    verdict("ui-ordering", problems);
  });
});
